#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlab/measure.hpp"

namespace wlab {

// Omega = [0,1] split into K atoms of mass 1/K; atom i is [i/K, (i+1)/K).
struct AtomSpace {
    std::size_t atoms = 0;

    explicit AtomSpace(std::size_t k) : atoms(k) {
        if (k == 0) throw invalid_input("AtomSpace: need at least one atom");
    }
    double mass() const { return 1.0 / double(atoms); }
    bool operator==(const AtomSpace& o) const { return atoms == o.atoms; }
};

// A measurable map Omega -> R^d, stored as a K x d value table.
class RandomVariable {
public:
    RandomVariable(AtomSpace space, std::size_t dim, std::vector<double> values);

    const AtomSpace& space() const { return space_; }
    std::size_t atoms() const { return space_.atoms; }
    std::size_t dim() const { return dim_; }
    std::span<const double> value(std::size_t atom) const {
        return {values_.data() + atom * dim_, dim_};
    }
    const std::vector<double>& values() const { return values_; }

    // sup over atoms of the Euclidean norm |X(omega)|
    double sup_norm() const;

private:
    AtomSpace space_;
    std::size_t dim_;
    std::vector<double> values_;
};

// N disjoint blocks of atom indices covering the space, all of size K/N.
class Partition {
public:
    Partition(AtomSpace space, std::vector<std::vector<std::uint32_t>> blocks);

    const AtomSpace& space() const { return space_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t block_size() const { return space_.atoms / blocks_.size(); }
    const std::vector<std::uint32_t>& block(std::size_t i) const { return blocks_[i]; }
    const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }

    // block index of every atom
    std::vector<std::uint32_t> atom_to_block() const;

private:
    AtomSpace space_;
    std::vector<std::vector<std::uint32_t>> blocks_;
};

enum class Lp { l1, l2, linf };

// Atom-mass-weighted norm of |X| (Euclidean per atom); linf is the max.
double lp_norm(const RandomVariable& x, Lp p);

// Replace X on each block by the block mean. Idempotent, mean-preserving,
// an L^p contraction.
RandomVariable cond_exp(const RandomVariable& x, const Partition& pi);

// || X - E[X | F_Pi] ||_2 : the partition-constrained quantization error.
double rho(const RandomVariable& x, const Partition& pi);

// Block-constant variable with value x^i on block i.
RandomVariable embed(const EmpiricalMeasure& x, const Partition& pi);

// K-point empirical measure of the value table.
EmpiricalMeasure law(const RandomVariable& x);

// Nondecreasing rearrangement of a 1-D measure on the atom grid
// (right-continuous CDF inverse evaluated at atom midpoints).
RandomVariable quantile_rv(const EmpiricalMeasure& m, AtomSpace space);

// Contiguous blocks [iK/N, (i+1)K/N).
Partition regular_partition(AtomSpace space, std::size_t n);

// Restriction of X to a subset of atoms, renormalized to its own space.
RandomVariable restrict_variable(const RandomVariable& x,
                                 std::span<const std::uint32_t> atom_subset);

// Partition built from a per-atom block label; validates balance.
Partition partition_from_labels(AtomSpace space, std::span<const std::uint32_t> labels,
                                std::size_t n);

} // namespace wlab
