#include "rescalc/perm.hpp"

#include <algorithm>
#include <numeric>

namespace rescalc {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 1 || v > degree() || seen[v - 1])
            throw Error(Errc::DegreeMismatch, "image array " + to_string() + " is not a bijection");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (images_[i] != i + 1)
            return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i)
        inv[images_[i] - 1] = i + 1;
    return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(images_[i]);
    }
    return out + "]";
}

Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.degree() != t.degree())
        throw Error(Errc::DegreeMismatch, "composing degree " + std::to_string(s.degree()) + " with degree " +
                                              std::to_string(t.degree()));
    std::vector<int> im(s.degree());
    for (int i = 1; i <= s.degree(); ++i)
        im[i - 1] = s(t(i));
    return Permutation(std::move(im));
}

Permutation block_sum(const std::vector<Permutation>& perms) {
    std::vector<int> im;
    int offset = 0;
    for (const auto& p : perms) {
        for (int v : p.images())
            im.push_back(v + offset);
        offset += p.degree();
    }
    return Permutation(std::move(im));
}

static int profile_total(const BlockProfile& blocks) {
    int n = 0;
    for (int b : blocks) {
        if (b < 0)
            throw Error(Errc::DegreeMismatch, "negative block size");
        n += b;
    }
    return n;
}

bool is_shuffle(const Permutation& s, const BlockProfile& blocks) {
    if (profile_total(blocks) != s.degree())
        throw Error(Errc::DegreeMismatch, "profile total differs from permutation degree");
    int offset = 0;
    for (int b : blocks) {
        for (int j = offset + 2; j <= offset + b; ++j)
            if (s(j - 1) > s(j))
                return false;
        offset += b;
    }
    return true;
}

std::vector<Permutation> enumerate_shuffles(const BlockProfile& blocks) {
    const int n = profile_total(blocks);
    std::vector<int> remaining = blocks;
    std::vector<int> word;  // word[p] = block placed at output position p
    std::vector<Permutation> out;

    auto emit = [&] {
        std::vector<int> offsets(blocks.size(), 0);
        for (std::size_t i = 1; i < blocks.size(); ++i)
            offsets[i] = offsets[i - 1] + blocks[i - 1];
        std::vector<int> next(blocks.size(), 0);
        std::vector<int> im(n);
        for (int p = 0; p < n; ++p) {
            int b = word[p];
            im[offsets[b] + next[b]++] = p + 1;
        }
        out.emplace_back(std::move(im));
    };

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(word.size()) == n) {
            emit();
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (!remaining[b])
                continue;
            --remaining[b];
            word.push_back(static_cast<int>(b));
            self(self);
            word.pop_back();
            ++remaining[b];
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

ShuffleDecomposition shuffle_decompose(const Permutation& s, const BlockProfile& blocks) {
    if (profile_total(blocks) != s.degree())
        throw Error(Errc::DegreeMismatch, "profile total differs from permutation degree");
    std::vector<int> shuffle_im(s.degree());
    ShuffleDecomposition out;
    int offset = 0;
    for (int b : blocks) {
        std::vector<int> images;
        for (int j = 1; j <= b; ++j)
            images.push_back(s(offset + j));
        std::vector<int> sorted = images;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> part(b);
        for (int j = 0; j < b; ++j) {
            shuffle_im[offset + j] = sorted[j];
            part[j] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), images[j]) - sorted.begin()) + 1;
        }
        out.parts.emplace_back(std::move(part));
        offset += b;
    }
    out.shuffle = Permutation(std::move(shuffle_im));
    return out;
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

std::uint64_t multinomial(const BlockProfile& blocks) {
    std::uint64_t result = 1;
    int total = 0;
    for (int b : blocks) {
        for (int i = 1; i <= b; ++i) {
            ++total;
            result = result * static_cast<std::uint64_t>(total) / static_cast<std::uint64_t>(i);
        }
    }
    return result;
}

} // namespace rescalc
