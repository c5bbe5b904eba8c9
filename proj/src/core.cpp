#include "fhsim/core.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace fhsim {

LogMag lm_sum(const std::vector<LogMag>& terms) {
    double m = kNegInf;
    for (const auto& t : terms) m = std::max(m, t.log_abs);
    if (m == kNegInf) return LogMag::zero();
    Scalar acc{0.0, 0.0};
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        acc += std::polar(std::exp(t.log_abs - m), t.phase);
    }
    double a = std::abs(acc);
    if (a == 0.0) return LogMag::zero();
    return LogMag{m + std::log(a), std::arg(acc)};
}

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    out.entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.entries_.empty() && out.entries_.back().index == e.index) {
            out.entries_.back().value += e.value;
        } else {
            out.entries_.push_back(e);
        }
    }
    std::erase_if(out.entries_, [](const Entry& e) { return e.value == Scalar{0.0, 0.0}; });
    for (const auto& e : out.entries_) {
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
            throw std::invalid_argument("SparseVec: non-finite coefficient");
    }
    return out;
}

Scalar SparseVec::at(std::uint64_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint64_t i) { return e.index < i; });
    if (it != entries_.end() && it->index == index) return it->value;
    return Scalar{0.0, 0.0};
}

bool SparseVec::operator==(const SparseVec& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].index != o.entries_[i].index) return false;
        if (entries_[i].value != o.entries_[i].value) return false;
    }
    return true;
}

double compensated_sum_desc(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(), std::greater<double>());
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    return sum + comp;
}

double lp_norm(const SparseVec& v, const SpaceConfig& space) {
    if (v.empty()) return 0.0;
    std::vector<double> terms;
    terms.reserve(v.support_size());
    for (const auto& e : v.entries()) terms.push_back(std::pow(std::abs(e.value), space.p));
    return std::pow(compensated_sum_desc(std::move(terms)), 1.0 / space.p);
}

SparseVec vec_axpy(Scalar a, const SparseVec& x, const SparseVec& y) {
    std::vector<SparseVec::Entry> merged;
    merged.reserve(x.support_size() + y.support_size());
    if (a != Scalar{0.0, 0.0})
        for (const auto& e : x.entries()) merged.push_back({e.index, a * e.value});
    for (const auto& e : y.entries()) merged.push_back(e);
    return SparseVec::from_entries(std::move(merged));
}

double lp_distance(const SparseVec& x, const SparseVec& y, const SpaceConfig& space) {
    return lp_norm(vec_sub(x, y), space);
}

std::string format_sparse_vec(const SparseVec& v) {
    std::string out;
    char buf[96];
    for (const auto& e : v.entries()) {
        std::snprintf(buf, sizeof buf, "%llu %.17g %.17g\n",
                      static_cast<unsigned long long>(e.index), e.value.real(), e.value.imag());
        out += buf;
    }
    return out;
}

void write_sparse_vec(std::ostream& os, const SparseVec& v) { os << format_sparse_vec(v); }

SparseVec parse_sparse_vec(const std::string& text) {
    std::istringstream is(text);
    std::vector<SparseVec::Entry> entries;
    std::string line;
    std::uint64_t prev = 0;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        unsigned long long idx;
        double re, im;
        if (!(ls >> idx >> re >> im))
            throw std::invalid_argument("parse_sparse_vec: malformed line: " + line);
        if (!first && idx <= prev)
            throw std::invalid_argument("parse_sparse_vec: indices not ascending");
        prev = idx;
        first = false;
        entries.push_back({idx, Scalar{re, im}});
    }
    return SparseVec::from_entries(std::move(entries));
}

}  // namespace fhsim
