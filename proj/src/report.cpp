#include "gck/report.hpp"

#include <cstdlib>
#include <sstream>

namespace gck {

const std::vector<Rational>& witness_grid() {
    static const std::vector<Rational> grid = [] {
        std::vector<Rational> g;
        if (const char* env = std::getenv("GCK_WITNESS_GRID")) {
            std::string s(env);
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) g.push_back(Rational::from_string(item));
            }
        }
        if (g.empty())
            g = {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2)};
        return g;
    }();
    return grid;
}

std::optional<Witness> find_witness(const RatPoly& defect) {
    if (defect.is_zero()) return std::nullopt;
    const auto& grid = witness_grid();
    const size_t n = defect.vars().size();
    if (n == 0) {
        return Witness{{}, {}, defect.constant_value()};
    }
    constexpr size_t kMaxEvals = 20000;
    std::vector<size_t> idx(n, 0);
    size_t evals = 0;
    while (evals < kMaxEvals) {
        std::vector<Rational> point;
        point.reserve(n);
        for (size_t i = 0; i < n; ++i) point.push_back(grid[idx[i]]);
        Rational v = defect.eval(point);
        ++evals;
        if (!v.is_zero()) return Witness{defect.vars(), std::move(point), std::move(v)};
        size_t pos = 0;
        while (pos < n) {
            if (++idx[pos] < grid.size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == n) break;  // grid exhausted
    }
    return std::nullopt;
}

void CheckReport::add(const std::string& name, const RatPoly& defect) {
    Defect d;
    d.name = name;
    d.zero = defect.is_zero();
    if (!d.zero) {
        d.poly = defect;
        d.witness = find_witness(defect);
        certified_ = false;
    }
    defects_.push_back(std::move(d));
}

void CheckReport::add_fact(const std::string& name, bool holds, const std::string& detail) {
    Defect d;
    d.name = detail.empty() ? name : name + " " + detail;
    d.zero = holds;
    if (!holds) certified_ = false;
    defects_.push_back(std::move(d));
}

void CheckReport::merge(const CheckReport& other) {
    for (const auto& d : other.defects_) {
        Defect copy = d;
        if (!other.subject_.empty()) copy.name = other.subject_ + ": " + copy.name;
        if (!copy.zero) certified_ = false;
        defects_.push_back(std::move(copy));
    }
}

std::vector<std::string> CheckReport::failed_names() const {
    std::vector<std::string> out;
    for (const auto& d : defects_)
        if (!d.zero) out.push_back(d.name);
    return out;
}

std::string CheckReport::summary() const {
    std::ostringstream os;
    os << (subject_.empty() ? "check" : subject_) << ": "
       << (certified_ ? "Certified" : "Refuted");
    if (!certified_) {
        os << " [";
        bool first = true;
        for (const auto& d : defects_) {
            if (d.zero) continue;
            if (!first) os << ", ";
            os << d.name;
            first = false;
        }
        os << "]";
    }
    return os.str();
}

}  // namespace gck
