#pragma once

#include "rescalc/error.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace rescalc {

// A bijection on [n] stored as 1-based images: position i maps to images[i-1].
// Composition follows (s o t)(i) = s(t(i)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i - 1]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

using BlockProfile = std::vector<int>;

Permutation compose(const Permutation& s, const Permutation& t);
Permutation block_sum(const std::vector<Permutation>& perms);

bool is_shuffle(const Permutation& s, const BlockProfile& blocks);
std::vector<Permutation> enumerate_shuffles(const BlockProfile& blocks);

struct ShuffleDecomposition {
    Permutation shuffle;
    std::vector<Permutation> parts;
};

// s = compose(shuffle, block_sum(parts)) with shuffle monotone on every block.
ShuffleDecomposition shuffle_decompose(const Permutation& s, const BlockProfile& blocks);

std::vector<Permutation> all_permutations(int n);
std::uint64_t multinomial(const BlockProfile& blocks);

// Right action: act(xs, s)[i] = xs[s(i)], so act(xs, compose(s, t)) = act(act(xs, s), t).
template <class T>
std::vector<T> act(const std::vector<T>& xs, const Permutation& s) {
    if (static_cast<int>(xs.size()) != s.degree())
        throw Error(Errc::LengthMismatch, "list of length " + std::to_string(xs.size()) +
                                              " acted on by a permutation of degree " +
                                              std::to_string(s.degree()));
    std::vector<T> out;
    out.reserve(xs.size());
    for (int i = 1; i <= s.degree(); ++i)
        out.push_back(xs[s(i) - 1]);
    return out;
}

template <class T, class Eq = std::equal_to<>>
std::vector<Permutation> stabilizer(const std::vector<T>& xs, Eq eq = {}) {
    std::vector<Permutation> out;
    for (const auto& s : all_permutations(static_cast<int>(xs.size()))) {
        bool fixed = true;
        for (int i = 1; i <= s.degree() && fixed; ++i)
            fixed = eq(xs[s(i) - 1], xs[i - 1]);
        if (fixed)
            out.push_back(s);
    }
    return out;
}

} // namespace rescalc
