#include "scarlab/basis.hpp"

#include <algorithm>
#include <limits>

namespace scarlab {

bool blockade_ok(word_t bits, int length, Boundary bc) {
    if (length < 1) throw InputError("blockade_ok: length must be >= 1");
    const word_t mask = (length >= 64) ? ~word_t(0) : ((word_t(1) << length) - 1);
    if (bits & ~mask) return false;
    if (bits & (bits >> 1)) return false;
    if (bc == Boundary::periodic && length >= 2 && (bits & 1) && (bits >> (length - 1) & 1))
        return false;
    return true;
}

big_int dimension(int length, Boundary bc) {
    if (length < 1) throw InputError("dimension: length must be >= 1");
    if (bc == Boundary::open) {
        // d(L) = d(L-1) + d(L-2), d(1) = 2, d(2) = 3  (Fibonacci F_{L+2})
        big_int prev = 2, cur = 3;
        if (length == 1) return prev;
        for (int l = 3; l <= length; ++l) {
            big_int next = cur + prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    // Periodic: Lucas numbers for L >= 2; a single periodic site has no
    // neighbor, so both states are allowed.
    if (length == 1) return 2;
    if (length == 2) return 3;
    big_int prev = 3, cur = 4;  // l(2), l(3)
    for (int l = 4; l <= length; ++l) {
        big_int next = cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::string config_to_string(word_t bits, int length) {
    std::string s(length, '0');
    for (int i = 0; i < length; ++i)
        if (bits >> i & 1) s[length - 1 - i] = '1';
    return s;
}

namespace {

// Emit valid words in ascending order by fixing bits from the top down,
// taking the 0 branch first.
void enumerate_rec(word_t prefix, int pos, int length, Boundary bc,
                   std::vector<word_t>& out) {
    if (pos < 0) {
        if (bc == Boundary::periodic && length >= 2 && (prefix & 1) &&
            (prefix >> (length - 1) & 1))
            return;
        out.push_back(prefix);
        return;
    }
    enumerate_rec(prefix, pos - 1, length, bc, out);
    const bool upper_neighbor_set = pos + 1 < length && (prefix >> (pos + 1) & 1);
    if (!upper_neighbor_set)
        enumerate_rec(prefix | (word_t(1) << pos), pos - 1, length, bc, out);
}

}  // namespace

ConstrainedBasis ConstrainedBasis::rydberg(int length, Boundary bc, std::size_t max_states) {
    if (length < 1 || length > 60) throw InputError("rydberg basis: length out of range [1, 60]");
    const big_int count = dimension(length, bc);
    if (count > big_int(max_states))
        throw CapacityError("rydberg basis: " + count.str() + " states exceeds the budget of " +
                            std::to_string(max_states));
    ConstrainedBasis b;
    b.length_ = length;
    b.bc_ = bc;
    b.blockaded_ = true;
    b.states_.reserve(static_cast<std::size_t>(count));
    enumerate_rec(0, length - 1, length, bc, b.states_);
    b.build_index();
    return b;
}

ConstrainedBasis ConstrainedBasis::spin_chain(int length, Boundary bc, std::size_t max_states) {
    if (length < 1 || length > 24) throw InputError("spin chain basis: length out of range [1, 24]");
    const std::size_t count = std::size_t(1) << length;
    if (count > max_states)
        throw CapacityError("spin chain basis: 2^" + std::to_string(length) +
                            " states exceeds the budget of " + std::to_string(max_states));
    ConstrainedBasis b;
    b.length_ = length;
    b.bc_ = bc;
    b.blockaded_ = false;
    b.states_.resize(count);
    for (std::size_t w = 0; w < count; ++w) b.states_[w] = w;
    b.build_index();
    return b;
}

void ConstrainedBasis::build_index() {
    if (length_ > lookup_table_max_sites) return;
    if (states_.size() > std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("basis index: too many states for the lookup table");
    lookup_.assign(std::size_t(1) << length_, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t n = 0; n < states_.size(); ++n)
        lookup_[states_[n]] = static_cast<std::uint32_t>(n);
}

bool ConstrainedBasis::valid(word_t bits) const {
    if (!blockaded_) {
        const word_t mask = (length_ >= 64) ? ~word_t(0) : ((word_t(1) << length_) - 1);
        return (bits & ~mask) == 0;
    }
    return blockade_ok(bits, length_, bc_);
}

std::size_t ConstrainedBasis::index_of(word_t bits) const {
    if (!valid(bits))
        throw ConstraintViolation("index_of: configuration " + config_to_string(bits, length_) +
                                  " violates the basis constraint");
    if (!lookup_.empty()) return lookup_[bits];
    const auto it = std::lower_bound(states_.begin(), states_.end(), bits);
    return static_cast<std::size_t>(it - states_.begin());
}

}  // namespace scarlab
