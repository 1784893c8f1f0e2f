#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace jumpflow {

// One atom of a finite mark measure: a point in the mark space with a
// positive weight.
struct MarkAtom {
    std::vector<double> mark;
    double weight = 0.0;
};

// Finite atomic measure on the mark space. The total mass nu(U) drives
// the Poisson event rate; normalized weights give the mark law.
class MarkMeasure {
public:
    MarkMeasure() = default;

    explicit MarkMeasure(std::vector<MarkAtom> atoms) : atoms_(std::move(atoms)) {
        total_mass_ = 0.0;
        for (const auto& a : atoms_) total_mass_ += a.weight;
        rebuild_cumulative();
        validate();
    }

    // Convenience: w * delta_{mark} for a scalar mark.
    static MarkMeasure scaled_dirac(double weight, double mark) {
        if (weight == 0.0) return MarkMeasure();
        return MarkMeasure({MarkAtom{{mark}, weight}});
    }

    double total_mass() const noexcept { return total_mass_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const MarkAtom& atom(std::size_t k) const { return atoms_.at(k); }
    const std::vector<MarkAtom>& atoms() const noexcept { return atoms_; }

    std::size_t mark_dim() const noexcept {
        return atoms_.empty() ? 0 : atoms_.front().mark.size();
    }

    // Index of the atom hit by a uniform draw u in (0,1), with
    // probability weight_k / total_mass.
    std::size_t sample_index(double u) const {
        if (atoms_.empty())
            throw std::logic_error("MarkMeasure::sample_index: empty measure");
        const double target = u * total_mass_;
        std::size_t lo = 0, hi = atoms_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative_[mid] < target) lo = mid + 1; else hi = mid;
        }
        return lo;
    }

    void validate() const {
        double sum = 0.0;
        std::size_t dim = mark_dim();
        for (const auto& a : atoms_) {
            if (!(a.weight > 0.0) || !std::isfinite(a.weight))
                throw std::invalid_argument("MarkMeasure: atom weights must be finite and > 0");
            if (a.mark.size() != dim)
                throw std::invalid_argument("MarkMeasure: atoms must share one mark dimension");
            for (double m : a.mark)
                if (!std::isfinite(m))
                    throw std::invalid_argument("MarkMeasure: non-finite mark");
            sum += a.weight;
        }
        if (atoms_.empty()) {
            if (total_mass_ != 0.0)
                throw std::invalid_argument("MarkMeasure: empty atom list requires zero mass");
            return;
        }
        const double rel = std::fabs(total_mass_ - sum) / sum;
        if (rel > 1e-12)
            throw std::invalid_argument("MarkMeasure: total mass inconsistent with atom weights");
    }

private:
    void rebuild_cumulative() {
        cumulative_.clear();
        cumulative_.reserve(atoms_.size());
        double acc = 0.0;
        for (const auto& a : atoms_) {
            acc += a.weight;
            cumulative_.push_back(acc);
        }
    }

    std::vector<MarkAtom> atoms_;
    std::vector<double> cumulative_;
    double total_mass_ = 0.0;
};

} // namespace jumpflow
