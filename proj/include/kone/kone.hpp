#ifndef KONE_KONE_HPP
#define KONE_KONE_HPP

#include "kone/certificate.hpp"
#include "kone/cone.hpp"
#include "kone/direct.hpp"
#include "kone/experiments.hpp"
#include "kone/family.hpp"
#include "kone/io.hpp"
#include "kone/irreducibility.hpp"
#include "kone/linalg.hpp"
#include "kone/lp.hpp"
#include "kone/minimal.hpp"
#include "kone/polyhedral.hpp"
#include "kone/primal_dual.hpp"
#include "kone/section.hpp"
#include "kone/tolerances.hpp"
#include "kone/words.hpp"

#endif
