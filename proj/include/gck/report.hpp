// Certificates and refutations.
//
// A check passes when every named defect polynomial is identically zero in
// canonical form. A nonzero canonical form already refutes; the witness point
// search over a small rational grid is best-effort diagnostics on top.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gck/ratpoly.hpp"

namespace gck {

struct Witness {
    std::vector<std::string> vars;
    std::vector<Rational> point;
    Rational value;
};

struct Defect {
    std::string name;
    bool zero = true;
    RatPoly poly;  // kept only when nonzero
    std::optional<Witness> witness;
};

class CheckReport {
  public:
    CheckReport() = default;
    explicit CheckReport(std::string subject) : subject_(std::move(subject)) {}

    const std::string& subject() const { return subject_; }
    bool certified() const { return certified_; }
    const std::vector<Defect>& defects() const { return defects_; }

    void add(const std::string& name, const RatPoly& defect);
    // Records an already-decided fact (used for pointwise rational checks).
    void add_fact(const std::string& name, bool holds, const std::string& detail = "");
    void merge(const CheckReport& other);

    // Names of the failed defects, for CLI reports and tests.
    std::vector<std::string> failed_names() const;
    std::string summary() const;

  private:
    std::string subject_;
    bool certified_ = true;
    std::vector<Defect> defects_;
};

// The deterministic witness grid: coordinates range over {0, 1, -1, 1/2,
// -1/2, 2}, overridable through the GCK_WITNESS_GRID environment variable
// (comma-separated rationals). The search is capped, so high-dimensional
// charts fall back to symbolic refutation.
const std::vector<Rational>& witness_grid();
std::optional<Witness> find_witness(const RatPoly& defect);

}  // namespace gck
