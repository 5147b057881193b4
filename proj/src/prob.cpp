#include "wlab/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wlab {

RandomVariable::RandomVariable(AtomSpace space, std::size_t dim, std::vector<double> values)
    : space_(space), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) throw invalid_input("RandomVariable: dim must be >= 1");
    if (values_.size() != space_.atoms * dim_)
        throw invalid_input("RandomVariable: value table must be K x d");
    for (double v : values_)
        if (!std::isfinite(v)) throw invalid_input("RandomVariable: non-finite entry");
}

double RandomVariable::sup_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < atoms(); ++i) {
        double s = 0.0;
        for (double v : value(i)) s += v * v;
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

Partition::Partition(AtomSpace space, std::vector<std::vector<std::uint32_t>> blocks)
    : space_(space), blocks_(std::move(blocks)) {
    const std::size_t n = blocks_.size();
    if (n == 0) throw invalid_input("Partition: need at least one block");
    if (space_.atoms % n != 0)
        throw invalid_input("Partition: atom count not divisible by block count");
    const std::size_t size = space_.atoms / n;
    std::vector<char> seen(space_.atoms, 0);
    for (const auto& b : blocks_) {
        if (b.size() != size) throw invalid_input("Partition: blocks must have equal size");
        for (auto a : b) {
            if (a >= space_.atoms) throw invalid_input("Partition: atom index out of range");
            if (seen[a]) throw invalid_input("Partition: blocks overlap");
            seen[a] = 1;
        }
    }
    // equal sizes + disjoint + count == K  =>  cover
}

std::vector<std::uint32_t> Partition::atom_to_block() const {
    std::vector<std::uint32_t> label(space_.atoms, 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        for (auto a : blocks_[b]) label[a] = static_cast<std::uint32_t>(b);
    return label;
}

double lp_norm(const RandomVariable& x, Lp p) {
    const std::size_t k = x.atoms();
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (double v : x.value(i)) s += v * v;
        switch (p) {
            case Lp::l1: acc += std::sqrt(s); break;
            case Lp::l2: acc += s; break;
            case Lp::linf: acc = std::max(acc, s); break;
        }
    }
    switch (p) {
        case Lp::l1: return acc / double(k);
        case Lp::l2: return std::sqrt(acc / double(k));
        default: return std::sqrt(acc);
    }
}

RandomVariable cond_exp(const RandomVariable& x, const Partition& pi) {
    if (!(x.space() == pi.space()))
        throw invalid_input("cond_exp: variable and partition live on different spaces");
    const std::size_t d = x.dim();
    std::vector<double> out(x.values().size(), 0.0);
    std::vector<double> mean(d);
    for (std::size_t b = 0; b < pi.block_count(); ++b) {
        std::fill(mean.begin(), mean.end(), 0.0);
        const auto& blk = pi.block(b);
        for (auto a : blk) {
            auto v = x.value(a);
            for (std::size_t q = 0; q < d; ++q) mean[q] += v[q];
        }
        for (auto& m : mean) m /= double(blk.size());
        for (auto a : blk)
            for (std::size_t q = 0; q < d; ++q) out[a * d + q] = mean[q];
    }
    return {x.space(), d, std::move(out)};
}

double rho(const RandomVariable& x, const Partition& pi) {
    if (!(x.space() == pi.space()))
        throw invalid_input("rho: variable and partition live on different spaces");
    const std::size_t d = x.dim();
    double acc = 0.0;
    std::vector<double> mean(d);
    for (std::size_t b = 0; b < pi.block_count(); ++b) {
        const auto& blk = pi.block(b);
        std::fill(mean.begin(), mean.end(), 0.0);
        for (auto a : blk) {
            auto v = x.value(a);
            for (std::size_t q = 0; q < d; ++q) mean[q] += v[q];
        }
        for (auto& m : mean) m /= double(blk.size());
        for (auto a : blk) {
            auto v = x.value(a);
            for (std::size_t q = 0; q < d; ++q) {
                double diff = v[q] - mean[q];
                acc += diff * diff;
            }
        }
    }
    return std::sqrt(acc / double(x.atoms()));
}

RandomVariable embed(const EmpiricalMeasure& x, const Partition& pi) {
    if (x.size() != pi.block_count())
        throw invalid_input("embed: point count must equal block count");
    const std::size_t d = x.dim();
    std::vector<double> out(pi.space().atoms * d, 0.0);
    for (std::size_t b = 0; b < pi.block_count(); ++b) {
        auto p = x.point(b);
        for (auto a : pi.block(b))
            for (std::size_t q = 0; q < d; ++q) out[a * d + q] = p[q];
    }
    return {pi.space(), d, std::move(out)};
}

EmpiricalMeasure law(const RandomVariable& x) {
    return {x.dim(), x.values()};
}

RandomVariable quantile_rv(const EmpiricalMeasure& m, AtomSpace space) {
    if (m.dim() != 1) throw invalid_input("quantile_rv: measure must be 1-D");
    std::vector<double> sorted = m.data();
    std::stable_sort(sorted.begin(), sorted.end());
    const std::size_t k = space.atoms, n = sorted.size();
    std::vector<double> vals(k);
    for (std::size_t i = 0; i < k; ++i) {
        // midpoint of atom i mapped through the CDF inverse
        auto j = static_cast<std::size_t>((double(2 * i + 1) * double(n)) / double(2 * k));
        vals[i] = sorted[std::min(j, n - 1)];
    }
    return {space, 1, std::move(vals)};
}

Partition regular_partition(AtomSpace space, std::size_t n) {
    if (n == 0 || space.atoms % n != 0)
        throw invalid_input("regular_partition: atom count not divisible by N");
    const std::size_t size = space.atoms / n;
    std::vector<std::vector<std::uint32_t>> blocks(n);
    for (std::size_t b = 0; b < n; ++b) {
        blocks[b].resize(size);
        std::iota(blocks[b].begin(), blocks[b].end(), static_cast<std::uint32_t>(b * size));
    }
    return {space, std::move(blocks)};
}

RandomVariable restrict_variable(const RandomVariable& x,
                                 std::span<const std::uint32_t> atom_subset) {
    if (atom_subset.empty()) throw invalid_input("restrict_variable: empty subset");
    const std::size_t d = x.dim();
    std::vector<double> vals;
    vals.reserve(atom_subset.size() * d);
    for (auto a : atom_subset) {
        if (a >= x.atoms()) throw invalid_input("restrict_variable: atom index out of range");
        auto v = x.value(a);
        vals.insert(vals.end(), v.begin(), v.end());
    }
    return {AtomSpace(atom_subset.size()), d, std::move(vals)};
}

Partition partition_from_labels(AtomSpace space, std::span<const std::uint32_t> labels,
                                std::size_t n) {
    if (labels.size() != space.atoms)
        throw invalid_input("partition_from_labels: label count mismatch");
    std::vector<std::vector<std::uint32_t>> blocks(n);
    for (std::size_t a = 0; a < labels.size(); ++a) {
        if (labels[a] >= n) throw invalid_input("partition_from_labels: label out of range");
        blocks[labels[a]].push_back(static_cast<std::uint32_t>(a));
    }
    return {space, std::move(blocks)};
}

} // namespace wlab
