#ifndef KONE_WORDS_HPP
#define KONE_WORDS_HPP

#include "kone/family.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kone {

/// Product word. letters = (d_1, ..., d_n), 1-based, acting right to left:
/// the product is A_{d_n} ... A_{d_1}, so d_1 is applied first.
struct Word {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }

    /// Letters in the order they are written in the product, left factor first.
    std::vector<int> printed() const { return {letters.rbegin(), letters.rend()}; }

    static Word from_printed(const std::vector<int>& s) { return Word{{s.rbegin(), s.rend()}}; }

    bool operator==(const Word&) const = default;
};

/// "A2^2 A1" for the product A_2 A_2 A_1.
inline std::string format_word(const Word& w)
{
    const std::vector<int> s = w.printed();
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) {
            ++j;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += 'A' + std::to_string(s[i]);
        if (j - i > 1) {
            out += '^' + std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

namespace detail {

inline bool is_primitive(const std::vector<int>& s)
{
    const std::size_t n = s.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) {
            continue;
        }
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) {
            periodic = s[i] == s[i - p];
        }
        if (periodic) {
            return false;
        }
    }
    return n > 0;
}

inline std::vector<int> max_rotation(const std::vector<int>& s)
{
    std::vector<int> best = s;
    std::vector<int> r = s;
    for (std::size_t k = 1; k < s.size(); ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (r > best) {
            best = r;
        }
    }
    return best;
}

} // namespace detail

/// Canonical representative of the rotation class of w: the lexicographically
/// largest rotation of its printed form.
inline Word canonical_word(const Word& w)
{
    return Word::from_printed(detail::max_rotation(w.printed()));
}

/// Two words describe the same cyclic product up to rotation.
inline bool same_rotation_class(const Word& a, const Word& b)
{
    return a.length() == b.length() && canonical_word(a) == canonical_word(b);
}

/// Primitive words over {1..m} ordered by length, then lexicographically by
/// canonical printed form; one word per rotation class. Lengths are expanded on demand.
class WordEnumerator {
public:
    explicit WordEnumerator(int m) : m_(m)
    {
        if (m < 1) {
            throw Error("WordEnumerator: alphabet size must be positive");
        }
    }

    int alphabet() const { return m_; }

    /// 1-based index; nullopt when fewer than `index` primitive classes exist.
    std::optional<Word> at(long index)
    {
        if (index < 1) {
            throw Error("WordEnumerator: index must be positive");
        }
        long skipped = 0;
        for (int n = 1;; ++n) {
            if (m_ == 1 && n > 1) {
                return std::nullopt;
            }
            const auto& level = words_of_length(n);
            if (index - skipped <= static_cast<long>(level.size())) {
                return Word::from_printed(level[static_cast<std::size_t>(index - skipped - 1)]);
            }
            skipped += static_cast<long>(level.size());
        }
    }

    /// Canonical printed forms of length n, ascending.
    const std::vector<std::vector<int>>& words_of_length(int n)
    {
        auto it = cache_.find(n);
        if (it != cache_.end()) {
            return it->second;
        }
        std::vector<std::vector<int>> out;
        std::vector<int> s(static_cast<std::size_t>(n), 1);
        while (true) {
            if (detail::is_primitive(s) && detail::max_rotation(s) == s) {
                out.push_back(s);
            }
            int k = n - 1;
            while (k >= 0 && s[static_cast<std::size_t>(k)] == m_) {
                s[static_cast<std::size_t>(k)] = 1;
                --k;
            }
            if (k < 0) {
                break;
            }
            ++s[static_cast<std::size_t>(k)];
        }
        return cache_.emplace(n, std::move(out)).first->second;
    }

private:
    int m_;
    std::map<int, std::vector<std::vector<int>>> cache_;
};

/// The index-th word of the enumeration order for an alphabet of size m.
inline std::optional<Word> enumerate_words(int m, long index)
{
    WordEnumerator e(m);
    return e.at(index);
}

/// A_{d_n} ... A_{d_1}.
inline Matrix product(const Word& w, const MatrixFamily& family)
{
    Matrix p = Matrix::Identity(family.dim(), family.dim());
    for (int letter : w.letters) {
        if (letter < 1 || letter > family.size()) {
            throw Error("product: letter " + std::to_string(letter) + " outside the family");
        }
        p = family[letter - 1] * p;
    }
    return p;
}

/// A_{d_n} ... A_{d_1} x, renormalized after each factor.
inline Vector apply_word(const Word& w, const MatrixFamily& family, Vector x)
{
    for (int letter : w.letters) {
        if (letter < 1 || letter > family.size()) {
            throw Error("apply_word: letter " + std::to_string(letter) + " outside the family");
        }
        x = family[letter - 1] * x;
        const double n = x.norm();
        if (n > 0.0) {
            x /= n;
        }
    }
    return x;
}

/// Cycle (v_1, ..., v_n) of leading eigenvectors of the rotations of a product.
struct CyclicRoot {
    Word word;
    std::vector<Vector> vectors;
    double eigenvalue = 0.0;
};

struct RootFailure {
    enum class Kind { NoPerron, NotSimple, ZeroCycle };
    Kind kind;
    double spectral_radius = 0.0;
};

inline const char* to_string(RootFailure::Kind k)
{
    switch (k) {
    case RootFailure::Kind::NoPerron:
        return "NoPerron";
    case RootFailure::Kind::NotSimple:
        return "NotSimple";
    case RootFailure::Kind::ZeroCycle:
        return "ZeroCycle";
    }
    return "?";
}

using RootResult = std::variant<CyclicRoot, RootFailure>;

/// v_1 is the leading eigenvector of the product and v_{j+1} = A_{d_j} v_j, each
/// normalized. The overall sign is provisional.
inline RootResult cyclic_root(const Word& w, const MatrixFamily& family, const Tolerances& tol)
{
    if (w.letters.empty()) {
        throw Error("cyclic_root: empty word");
    }
    const Matrix p = product(w, family);
    const PerronResult pr = leading_eigenpair(p, tol);
    if (const auto* np = std::get_if<NoPerron>(&pr)) {
        return RootFailure{RootFailure::Kind::NoPerron, np->spectral_radius};
    }
    const auto& pd = std::get<PerronData>(pr);
    if (!pd.unique_vector) {
        return RootFailure{RootFailure::Kind::NotSimple, pd.spectral_radius};
    }
    if (pd.eigenvalue <= tol.eig_gap * std::max(1.0, p.norm())) {
        return RootFailure{RootFailure::Kind::ZeroCycle, pd.spectral_radius};
    }
    CyclicRoot root;
    root.word = w;
    root.eigenvalue = pd.eigenvalue;
    Vector v = pd.right_vector;
    const double scale = std::max(1.0, p.norm());
    for (int j = 0; j < w.length(); ++j) {
        root.vectors.push_back(v);
        if (j + 1 == w.length()) {
            break;
        }
        v = family[w.letters[static_cast<std::size_t>(j)] - 1] * v;
        const double n = v.norm();
        if (n <= 1e-12 * scale) {
            return RootFailure{RootFailure::Kind::ZeroCycle, pd.spectral_radius};
        }
        v /= n;
    }
    return root;
}

} // namespace kone

#endif
