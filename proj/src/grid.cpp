#include "triadne/grid.hpp"

#include <algorithm>
#include <cmath>

namespace triadne {

GridFunction::GridFunction(int d) : d_(d) {
    if (d < 1) throw argument_error("GridFunction: dimension must be >= 1");
}

cplx GridFunction::at(const LatticeVector& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? cplx{} : it->second;
}

void GridFunction::set(LatticeVector x, cplx v) {
    if (int(x.size()) != d_) throw argument_error("GridFunction: coordinate dimension mismatch");
    if (v == cplx{})
        entries_.erase(x);
    else
        entries_[std::move(x)] = v;
}

void GridFunction::add(const LatticeVector& x, cplx v) {
    if (int(x.size()) != d_) throw argument_error("GridFunction: coordinate dimension mismatch");
    auto it = entries_.find(x);
    if (it == entries_.end()) {
        if (v != cplx{}) entries_.emplace(x, v);
        return;
    }
    it->second += v;
    if (it->second == cplx{}) entries_.erase(it);
}

GridFunction GridFunction::delta(int d, LatticeVector at) {
    GridFunction f(d);
    if (at.empty()) at.assign(d, 0);
    f.set(std::move(at), 1.0);
    return f;
}

GridFunction GridFunction::translated(const LatticeVector& w) const {
    GridFunction r(d_);
    for (const auto& [x, v] : entries_) {
        LatticeVector y = x;
        for (int i = 0; i < d_; ++i) y[i] += w[i];
        r.entries_.emplace(std::move(y), v);
    }
    return r;
}

GridFunction GridFunction::scaled(cplx c) const {
    GridFunction r(d_);
    for (const auto& [x, v] : entries_) r.set(x, v * c);
    return r;
}

GridFunction GridFunction::abs() const {
    GridFunction r(d_);
    for (const auto& [x, v] : entries_) r.set(x, std::abs(v));
    return r;
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
    GridFunction r = *this;
    for (const auto& [x, v] : o.entries_) r.add(x, v);
    return r;
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
    GridFunction r = *this;
    for (const auto& [x, v] : o.entries_) r.add(x, -v);
    return r;
}

double GridFunction::sup_norm() const {
    double m = 0;
    for (const auto& kv : entries_) m = std::max(m, std::abs(kv.second));
    return m;
}

double GridFunction::diameter() const {
    double best = 0;
    for (auto a = entries_.begin(); a != entries_.end(); ++a)
        for (auto b = std::next(a); b != entries_.end(); ++b) {
            double s = 0;
            for (int i = 0; i < d_; ++i) {
                double t = double(a->first[i] - b->first[i]);
                s += t * t;
            }
            best = std::max(best, std::sqrt(s));
        }
    return best;
}

json GridFunction::to_json() const {
    json j;
    j["schema"] = schema_tag;
    j["d"] = d_;
    json es = json::array();
    for (const auto& [x, v] : entries_) es.push_back({{"coords", x}, {"re", v.real()}, {"im", v.imag()}});
    j["entries"] = es;
    return j;
}

GridFunction GridFunction::from_json(const json& j) {
    GridFunction f(j.at("d").get<int>());
    for (const auto& e : j.at("entries"))
        f.set(e.at("coords").get<LatticeVector>(), {e.at("re").get<double>(), e.value("im", 0.0)});
    return f;
}

GridFunction from_accumulator(int d, const SparseAccumulator& acc) {
    GridFunction f(d);
    for (const auto& [x, v] : acc) f.set(x, v);
    return f;
}

}  // namespace triadne
