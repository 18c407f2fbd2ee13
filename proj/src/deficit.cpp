#include "mrhs/deficit.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_set>

#include "mrhs/kernels.hpp"

namespace mrhs {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();

std::string row_key(const Mat& m, std::size_t r) {
    std::string k;
    k.reserve(m.cols() * sizeof(FieldElem));
    for (std::size_t c = 0; c < m.cols(); ++c) {
        FieldElem v = m.get(r, c);
        k.append(reinterpret_cast<const char*>(&v), sizeof(FieldElem));
    }
    return k;
}

// Incremental growth along a prefix; copyable so the greedy pass can probe.
class GrowthTracker {
public:
    GrowthTracker(const VectorFamily& fam, GrowthMode mode)
        : fam_(&fam), mode_(mode), rank_(fam.field, fam.n) {}

    std::size_t add_set(std::size_t i) {
        const Mat& s = fam_->sets[i];
        if (mode_ == GrowthMode::Rank) {
            for (std::size_t r = 0; r < s.rows(); ++r) rank_.add_row(s, r);
        } else {
            for (std::size_t r = 0; r < s.rows(); ++r) seen_.insert(row_key(s, r));
        }
        return growth();
    }

    std::size_t growth() const {
        return mode_ == GrowthMode::Rank ? rank_.rank() : seen_.size();
    }

private:
    const VectorFamily* fam_;
    GrowthMode mode_;
    RankAccumulator rank_;
    std::unordered_set<std::string> seen_;
};

// From-scratch growth of a set-of-sets, specialized per storage. The subset
// DP calls this once per subset, so the packed single-word case is kept free
// of allocation and dispatch overhead.
class SubsetGrowth {
public:
    SubsetGrowth(const VectorFamily& fam, GrowthMode mode) : fam_(&fam), mode_(mode) {
        const FieldSpec& f = fam.field;
        wpr_ = (fam.n + 63) / 64;
        if (mode == GrowthMode::Rank && f.is_binary()) {
            for (const Mat& s : fam.sets)
                for (std::size_t r = 0; r < s.rows(); ++r) {
                    rows_w_.insert(rows_w_.end(), s.row_words(r), s.row_words(r) + wpr_);
                    row_set_.push_back(&s - fam.sets.data());
                }
            basis_w_.resize(fam.sets.size() * maxt() * wpr_);
        }
        scratch_.resize(wpr_);
    }

    std::size_t growth(std::uint32_t subset) {
        if (mode_ == GrowthMode::Union) return growth_union(subset);
        if (fam_->field.is_binary())
            return wpr_ == 1 ? growth_packed1(subset) : growth_packed(subset);
        return growth_generic(subset);
    }

private:
    std::size_t maxt() const {
        std::size_t t = 1;
        for (const Mat& s : fam_->sets) t = std::max(t, s.rows());
        return t;
    }

    std::size_t growth_packed1(std::uint32_t subset) {
        std::uint64_t basis[64];
        std::size_t cnt = 0;
        for (std::size_t idx = 0; idx < row_set_.size(); ++idx) {
            if (!((subset >> row_set_[idx]) & 1u)) continue;
            std::uint64_t w = rows_w_[idx];
            for (std::size_t b = 0; b < cnt; ++b)
                w = std::min(w, w ^ basis[b]);
            if (w) {
                basis[cnt++] = w;
                // keep rows sorted descending by leading bit
                for (std::size_t b = cnt - 1; b > 0 && basis[b] > basis[b - 1]; --b)
                    std::swap(basis[b], basis[b - 1]);
            }
        }
        return cnt;
    }

    std::size_t growth_packed(std::uint32_t subset) {
        const auto& k = kern::active();
        std::size_t cnt = 0;
        std::vector<std::size_t> piv;
        for (std::size_t idx = 0; idx < row_set_.size(); ++idx) {
            if (!((subset >> row_set_[idx]) & 1u)) continue;
            std::copy(&rows_w_[idx * wpr_], &rows_w_[idx * wpr_] + wpr_, scratch_.begin());
            for (std::size_t b = 0; b < cnt; ++b) {
                std::size_t p = piv[b];
                if ((scratch_[p / 64] >> (p % 64)) & 1u)
                    k.xor_rows(scratch_.data(), &basis_w_[b * wpr_], wpr_);
            }
            std::size_t p = static_cast<std::size_t>(-1);
            for (std::size_t w = 0; w < wpr_; ++w)
                if (scratch_[w]) {
                    p = w * 64 + std::countr_zero(scratch_[w]);
                    break;
                }
            if (p == static_cast<std::size_t>(-1)) continue;
            std::copy(scratch_.begin(), scratch_.end(), basis_w_.begin() + cnt * wpr_);
            piv.push_back(p);
            ++cnt;
        }
        return cnt;
    }

    std::size_t growth_generic(std::uint32_t subset) {
        RankAccumulator acc(fam_->field, fam_->n);
        for (std::size_t i = 0; i < fam_->sets.size(); ++i) {
            if (!((subset >> i) & 1u)) continue;
            const Mat& s = fam_->sets[i];
            for (std::size_t r = 0; r < s.rows(); ++r) acc.add_row(s, r);
        }
        return acc.rank();
    }

    std::size_t growth_union(std::uint32_t subset) {
        keys_.clear();
        for (std::size_t i = 0; i < fam_->sets.size(); ++i) {
            if (!((subset >> i) & 1u)) continue;
            const Mat& s = fam_->sets[i];
            for (std::size_t r = 0; r < s.rows(); ++r) keys_.push_back(row_key(s, r));
        }
        std::sort(keys_.begin(), keys_.end());
        return static_cast<std::size_t>(
            std::unique(keys_.begin(), keys_.end()) - keys_.begin());
    }

    const VectorFamily* fam_;
    GrowthMode mode_;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> rows_w_;  // packed rows of all sets, concatenated
    std::vector<std::size_t> row_set_;   // owning set index per packed row
    std::vector<std::uint64_t> basis_w_;
    std::vector<std::uint64_t> scratch_;
    std::vector<std::string> keys_;
};

DeficitReport report_for_order(const VectorFamily& fam, GrowthMode mode,
                               std::vector<std::size_t> order) {
    GrowthTracker tracker(fam, mode);
    DeficitReport rep{std::move(order), {}, kNegInf, 0};
    for (std::size_t k = 1; k <= rep.order.size(); ++k) {
        std::size_t g = tracker.add_set(rep.order[k - 1]);
        std::int64_t d = static_cast<std::int64_t>(g) - static_cast<std::int64_t>(k);
        rep.profile.push_back(ProfileEntry{k, g, d});
        if (d > rep.max_deficit) {
            rep.max_deficit = d;
            rep.argmax_k = k;
        }
    }
    return rep;
}

}  // namespace

void validate_family(const VectorFamily& fam) {
    if (fam.sets.empty()) throw Error("family must contain at least one set");
    for (const Mat& s : fam.sets) {
        if (s.cols() != fam.n || s.field() != fam.field)
            throw DimensionMismatch("family: set with different n or field");
        if (s.rows() == 0) throw Error("family: empty vector set");
        if (s.rows() > fam.t) throw Error("family: set larger than declared bound t");
    }
}

DeficitReport prefix_deficit(const VectorFamily& fam, GrowthMode mode,
                             const std::vector<std::size_t>& order) {
    validate_family(fam);
    std::size_t m = fam.m();
    if (order.size() != m) throw InvalidPermutation("order has wrong length");
    std::vector<bool> seen(m, false);
    for (std::size_t i : order) {
        if (i >= m || seen[i]) throw InvalidPermutation("order is not a permutation");
        seen[i] = true;
    }
    return report_for_order(fam, mode, order);
}

DeficitReport min_deficit_exact(const VectorFamily& fam, GrowthMode mode, std::size_t cap) {
    validate_family(fam);
    std::size_t m = fam.m();
    if (m > cap || m > 31)
        throw TooManySets("min_deficit_exact: m = " + std::to_string(m) + " exceeds cap " +
                          std::to_string(std::min<std::size_t>(cap, 31)));

    std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
    std::vector<std::uint8_t> growth(std::size_t(full) + 1, 0);
    std::vector<std::int16_t> best(std::size_t(full) + 1, 0);
    SubsetGrowth sg(fam, mode);

    for (std::uint32_t s = 1; s <= full; ++s) {
        std::size_t g = sg.growth(s);
        if (g > 255) throw TooManySets("min_deficit_exact: growth exceeds byte storage");
        growth[s] = static_cast<std::uint8_t>(g);
        int k = std::popcount(s);
        std::int16_t gd = static_cast<std::int16_t>(static_cast<int>(g) - k);
        std::int16_t sub = std::numeric_limits<std::int16_t>::max();
        for (std::uint32_t bits = s; bits;) {
            std::uint32_t i = std::countr_zero(bits);
            bits &= bits - 1;
            std::uint32_t prev = s & ~(1u << i);
            if (prev == 0) {
                sub = std::numeric_limits<std::int16_t>::min();
                break;  // best(empty) = -inf, nothing smaller exists
            }
            sub = std::min(sub, best[prev]);
        }
        best[s] = std::max(gd, sub);
    }

    // reconstruct one optimal order, lowest index on ties, chosen back to front
    std::vector<std::size_t> order(m);
    std::uint32_t s = full;
    for (std::size_t pos = m; pos-- > 0;) {
        int k = std::popcount(s);
        std::int16_t gd = static_cast<std::int16_t>(static_cast<int>(growth[s]) - k);
        for (std::uint32_t bits = s; bits;) {
            std::uint32_t i = std::countr_zero(bits);
            bits &= bits - 1;
            std::uint32_t prev = s & ~(1u << i);
            std::int16_t pb = prev == 0 ? std::numeric_limits<std::int16_t>::min() : best[prev];
            if (std::max(gd, pb) == best[s]) {
                order[pos] = i;
                s = prev;
                break;
            }
        }
    }
    return report_for_order(fam, mode, std::move(order));
}

DeficitReport min_deficit_bruteforce(const VectorFamily& fam, GrowthMode mode, std::size_t cap) {
    validate_family(fam);
    std::size_t m = fam.m();
    if (m > cap)
        throw TooManySets("min_deficit_bruteforce: m = " + std::to_string(m) + " exceeds cap " +
                          std::to_string(cap));

    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::vector<std::size_t> best_perm = perm;
    std::int64_t best_val = std::numeric_limits<std::int64_t>::max();
    do {
        GrowthTracker tracker(fam, mode);
        std::int64_t worst = kNegInf;
        for (std::size_t k = 1; k <= m; ++k) {
            std::size_t g = tracker.add_set(perm[k - 1]);
            worst = std::max(worst, static_cast<std::int64_t>(g) - static_cast<std::int64_t>(k));
        }
        if (worst < best_val) {
            best_val = worst;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return report_for_order(fam, mode, std::move(best_perm));
}

DeficitReport min_deficit_greedy(const VectorFamily& fam, GrowthMode mode) {
    validate_family(fam);
    std::size_t m = fam.m();
    GrowthTracker tracker(fam, mode);
    std::vector<bool> used(m, false);
    std::vector<std::size_t> order;
    order.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t cur = tracker.growth();
        std::size_t best_i = m, best_inc = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            GrowthTracker probe = tracker;
            std::size_t inc = probe.add_set(i) - cur;
            if (inc < best_inc) {
                best_inc = inc;
                best_i = i;
            }
        }
        used[best_i] = true;
        tracker.add_set(best_i);
        order.push_back(best_i);
    }
    return report_for_order(fam, mode, std::move(order));
}

bool upper_bound_check(const VectorFamily& fam, std::size_t exact_cap) {
    validate_family(fam);
    if (fam.m() != fam.n) throw Error("upper_bound_check: requires m == n");
    DeficitReport rep = fam.m() <= exact_cap ? min_deficit_exact(fam, GrowthMode::Rank, exact_cap)
                                             : min_deficit_greedy(fam, GrowthMode::Rank);
    std::int64_t bound = static_cast<std::int64_t>(fam.n) -
                         static_cast<std::int64_t>((fam.n + fam.t - 1) / fam.t);
    return rep.max_deficit <= bound;
}

}  // namespace mrhs
