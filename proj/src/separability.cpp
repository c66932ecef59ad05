#include "bochner/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bochner {

namespace {

// Grows a rational table in enumeration order.
struct RationalGen {
  std::vector<Rational> table{{0, 1}};
  long long height = 2;
  long long num = 1;
  SignOrder order = SignOrder::plus_first;

  void grow_to(std::size_t count) {
    while (table.size() <= count) {
      long long den = height - num;
      if (std::gcd(num, den) == 1) {
        if (order == SignOrder::plus_first) {
          table.push_back({num, den});
          table.push_back({-num, den});
        } else {
          table.push_back({-num, den});
          table.push_back({num, den});
        }
      }
      if (++num >= height) {
        ++height;
        num = 1;
      }
    }
  }
};

std::pair<std::size_t, std::size_t> cantor_unpair(std::size_t k) {
  std::size_t w =
      static_cast<std::size_t>((std::sqrt(8.0 * double(k) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > k) --w;
  while ((w + 1) * (w + 2) / 2 <= k) ++w;
  std::size_t j = k - w * (w + 1) / 2;
  return {w - j, j};
}

}  // namespace

Rational nth_rational(std::size_t n, SignOrder order) {
  thread_local RationalGen plus_gen;
  thread_local RationalGen minus_gen{{{0, 1}}, 2, 1, SignOrder::minus_first};
  RationalGen& gen = order == SignOrder::plus_first ? plus_gen : minus_gen;
  gen.grow_to(n);
  return gen.table[n];
}

struct DenseSeq::Cache {
  RationalGen gen;
};

DenseSeq::DenseSeq(Carrier carrier, bool zero_first, SignOrder order)
    : carrier_(std::move(carrier)),
      zero_first_(zero_first),
      order_(order),
      dim_(carrier_.dim()),
      cache_(std::make_shared<Cache>()) {
  cache_->gen.order = order_;
}

double DenseSeq::coord_value(std::size_t k) const {
  cache_->gen.grow_to(k);
  return cache_->gen.table[k].value();
}

void DenseSeq::coords_at(std::size_t n, double* out) const {
  if (!zero_first_) ++n;  // skip the zero vector at index 0
  for (std::size_t c = 0; c + 1 < dim_; ++c) {
    auto [head, rest] = cantor_unpair(n);
    out[c] = coord_value(head);
    n = rest;
  }
  out[dim_ - 1] = coord_value(n);
}

Vector DenseSeq::at(std::size_t n) const {
  std::vector<double> coords(dim_);
  coords_at(n, coords.data());
  return Vector(carrier_, std::move(coords));
}

WeakSepReport weak_sep_check(const DenseSeq& u,
                             const std::vector<Vector>& samples, double eps,
                             std::size_t max_n) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  for (const Vector& s : samples) {
    if (!(s.carrier() == u.carrier())) {
      throw std::invalid_argument("carrier mismatch");
    }
  }
  WeakSepReport report;
  report.eps = eps;
  report.max_n = max_n;
  report.found.assign(samples.size(), false);
  report.first_index.assign(samples.size(), 0);

  const std::size_t dim = u.dim();
  const double eps_sq = eps * eps;
  std::vector<double> coords(dim);
  std::vector<std::size_t> pending(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) pending[s] = s;
  for (std::size_t n = 0; n <= max_n && !pending.empty(); ++n) {
    u.coords_at(n, coords.data());
    for (std::size_t p = 0; p < pending.size();) {
      std::size_t s = pending[p];
      double d = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        double t = samples[s][c] - coords[c];
        d += t * t;
      }
      if (d < eps_sq) {
        report.found[s] = true;
        report.first_index[s] = n;
        pending[p] = pending.back();
        pending.pop_back();
      } else {
        ++p;
      }
    }
  }

  report.ok = pending.empty();
  std::size_t worst = 0;
  if (!pending.empty()) {
    worst = *std::min_element(pending.begin(), pending.end());
  } else {
    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (report.first_index[s] > report.first_index[worst]) worst = s;
    }
  }
  report.worst_sample = worst;
  return report;
}

}  // namespace bochner
