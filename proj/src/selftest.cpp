#include "colevel/selftest.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace colevel {

namespace {

std::string show(const DegreeSequence& d) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "," : "") << d[i];
  out << ']';
  return out.str();
}

class Tally {
 public:
  void record(const std::string& name, bool ok, const std::function<std::string()>& describe) {
    auto& check = checks_[name];
    if (check.name.empty()) {
      check.name = name;
      order_.push_back(name);
    }
    ++check.cases;
    if (!ok) {
      if (check.violations == 0) check.first_counterexample = describe();
      ++check.violations;
    }
  }

  std::vector<PropertyCheck> result() const {
    std::vector<PropertyCheck> out;
    for (const auto& name : order_) out.push_back(checks_.at(name));
    return out;
  }

 private:
  std::map<std::string, PropertyCheck> checks_;
  std::vector<std::string> order_;
};

void enumerate(Int remaining, Int max_value, std::vector<Int>& prefix, std::vector<DegreeSequence>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (Int d = max_value; d >= 1; --d) {
    prefix.push_back(d);
    enumerate(remaining - 1, d, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<DegreeSequence> degree_grid(Int max_r, Int max_degree) {
  std::vector<DegreeSequence> out;
  std::vector<Int> prefix;
  for (Int r = 1; r <= max_r; ++r) enumerate(r, max_degree, prefix, out);
  return out;
}

std::vector<PropertyCheck> run_property_grid(const GridConfig& config) {
  Tally tally;
  const auto grid = degree_grid(config.max_r, config.max_degree);

  for (const auto& d : grid) {
    const Int r = static_cast<Int>(d.size());
    for (Int N = 0; N <= config.max_N; ++N) {
      for (Int j = 0; j <= config.max_j; ++j) {
        auto where = [&](Int e) {
          return [&, e] {
            std::ostringstream out;
            out << "N=" << N << " d=" << show(d) << " j=" << j << " e=" << e;
            return out.str();
          };
        };

        tally.record("nu^(r) = mu", nu(j, r, N, d) == mu(j, N, d), where(r));
        tally.record("mu_j = j + mu_0(N - j)", mu(j, N, d) == j + mu(0, N - j, d), where(r));
        if (j < config.max_j) tally.record("mu non-decreasing in j", mu(j + 1, N, d) >= mu(j, N, d), where(r));

        for (Int e = -1; e <= r + 1; ++e) {
          const Int value = nu(j, e, N, d);
          if (e <= r) tally.record("nu non-increasing in e", nu(j, e + 1, N, d) <= value, where(e));
          if (j < config.max_j) tally.record("nu non-decreasing in j", nu(j + 1, e, N, d) >= value, where(e));

          // Raise one entry by one and re-sort.
          for (std::size_t k = 0; k < d.size(); ++k) {
            if (d[k] >= config.max_degree) continue;
            std::vector<Int> raised(d.values().begin(), d.values().end());
            raised[k] += 1;
            const DegreeSequence bigger(raised);
            auto describe = [&, e, k] {
              std::ostringstream out;
              out << where(e)() << " raise d_" << k + 1 << " -> " << show(bigger) << ": " << value << " -> "
                  << nu(j, e, N, bigger);
              return out.str();
            };
            const bool ok = nu(j, e, N, bigger) <= value;
            tally.record("nu non-increasing in degrees", ok, describe);
            if (bigger.leading() == d.leading())
              tally.record("nu non-increasing in degrees (leading degree fixed)", ok, describe);
          }

          for (Int i = 1; i <= config.max_i; ++i)
            tally.record("nu_{j+i}^(e) >= nu_j^(e-i)", nu(j + i, e, N, d) >= nu(j, e - i, N, d), where(e));

          for (Int r1 = 1; r1 <= r - 1; ++r1) {
            if (e < 1 || e > r1) continue;
            tally.record("truncation nu_{j+r-r1-1}^(e)(d_1..d_r1) >= nu_j^(e)",
                         nu(j + (r - r1 - 1), e, N, d.prefix(static_cast<std::size_t>(r1))) >= value, where(e));
          }

          if (j >= 1)
            tally.record("1 + nu_{j-1}^(e)(N) = nu_j^(e)(N+1)", 1 + nu(j - 1, e, N, d) == nu(j, e, N + 1, d),
                         where(e));
          if (j == 0)
            tally.record("1 + nu_0^(e+1)(N) >= nu_0^(e)(N+1)", 1 + nu(0, e + 1, N, d) >= nu(0, e, N + 1, d),
                         where(e));
        }

        // Chain nu^(-1) = nu^(0) >= ... >= nu^(r) = nu^(r+1) = mu.
        bool chain = nu(j, -1, N, d) == nu(j, 0, N, d) && nu(j, r, N, d) == nu(j, r + 1, N, d) &&
                     nu(j, r, N, d) == mu(j, N, d);
        for (Int e = 0; e < r; ++e) chain = chain && nu(j, e, N, d) >= nu(j, e + 1, N, d);
        tally.record("chain nu^(0) >= ... >= nu^(r) = mu", chain, where(0));
      }

      // Table dominance over every consistent dimension.
      if (N < 1) continue;
      for (Int n = std::max<Int>(0, N - r); n <= N; ++n) {
        for (bool projective : {false, true}) {
          const AmbientProblem problem{N, n, projective};
          const BoundTable base = projective ? projective_bound_table(problem, d) : affine_bound_table(problem, d);
          const BoundTable complement = complement_bound_table(problem, d);
          for (const BoundTable* table : {&base, &complement}) {
            // n = N means X is all of the ambient space: the complement is empty.
            if (table == &complement && n == N) continue;
            for (const auto& [deg, entry] : table->entries) {
              const bool ok = entry.new_bound >= entry.deligne && entry.deligne >= 0 &&
                              entry.new_bound >= entry.ax_katz &&
                              (!entry.question_mu || entry.new_bound >= *entry.question_mu);
              tally.record("table dominance (" + to_string(table->kind) + ")", ok, [&, deg = deg] {
                std::ostringstream out;
                out << "N=" << N << " n=" << n << " d=" << show(d) << " degree " << deg;
                return out.str();
              });
            }
          }
        }
      }
    }
  }
  return tally.result();
}

}  // namespace colevel
