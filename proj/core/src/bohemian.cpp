#include "dlab/bohemian.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dlab/parallel.hpp"
#include "dlab/polyroot.hpp"

namespace dlab::bohemian {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split_tokens(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Population::Population(std::vector<GaussianRational> values) : exact_(std::move(values)) {
  if (exact_.empty()) throw InvalidArgument("population must not be empty");
  std::set<GaussianRational> seen;
  for (const auto& v : exact_) {
    if (!seen.insert(v).second) throw InvalidArgument("population value " + v.to_string() + " repeated");
    approx_.push_back(v.to_complex());
  }
}

Population Population::parse(std::string_view text) {
  std::vector<GaussianRational> values;
  for (const std::string& token : split_tokens(text, ',')) {
    if (token.empty()) throw InvalidArgument("empty token in population '" + std::string(text) + "'");
    values.push_back(GaussianRational::parse(token));
  }
  return Population(std::move(values));
}

std::string Population::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < exact_.size(); ++k) s += (k ? "," : "") + exact_[k].to_string();
  return s + "}";
}

BohemianFamily BohemianFamily::hessenberg_toeplitz(std::size_t m) {
  if (m < 1) throw InvalidArgument("Hessenberg-Toeplitz family needs dimension >= 1");
  return {HessenbergToeplitz{m}, m};
}

BohemianFamily BohemianFamily::skew_pentadiagonal(std::size_t n) {
  if (n < 3) throw InvalidArgument("skew-pentadiagonal family needs dimension >= 3");
  return {SkewPentadiagonal{n}, 2 * n - 3};
}

BohemianFamily BohemianFamily::custom(std::size_t dim, std::vector<PatternCell> cells) {
  if (dim < 1 || cells.size() != dim * dim) throw InvalidArgument("custom pattern must be a nonempty square grid");
  std::set<std::size_t> slots;
  for (const PatternCell& c : cells)
    if (c.kind != PatternCell::Kind::fixed) {
      if (c.slot < 1) throw InvalidArgument("custom pattern slots are numbered from 1");
      slots.insert(c.slot);
    }
  if (slots.empty()) throw InvalidArgument("custom pattern has no slots");
  if (*slots.rbegin() != slots.size()) throw InvalidArgument("custom pattern slots must be contiguous from 1");
  const std::size_t count = slots.size();
  return {CustomPattern{dim, std::move(cells)}, count};
}

BohemianFamily BohemianFamily::parse_pattern(std::string_view text) {
  std::vector<std::vector<PatternCell>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<PatternCell> row;
    std::string token;
    while (ls >> token) {
      PatternCell cell;
      const bool negated = token.size() > 1 && token[0] == '-' && token[1] == 't';
      const std::string body = negated ? token.substr(1) : token;
      if (!body.empty() && body[0] == 't') {
        const std::string digits = body.substr(1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
          throw InvalidArgument("malformed pattern cell '" + token + "'");
        cell.kind = negated ? PatternCell::Kind::negated_slot : PatternCell::Kind::slot;
        cell.slot = std::stoul(digits);
      } else {
        cell.value = GaussianRational::parse(token);
      }
      row.push_back(std::move(cell));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::size_t dim = rows.size();
  std::vector<PatternCell> cells;
  for (auto& row : rows) {
    if (row.size() != dim)
      throw InvalidArgument("custom pattern row has " + std::to_string(row.size()) + " cells, expected " +
                            std::to_string(dim));
    for (auto& c : row) cells.push_back(std::move(c));
  }
  return custom(dim, std::move(cells));
}

std::size_t BohemianFamily::dimension() const {
  return std::visit([](const auto& k) { return k.dim; }, kind_);
}

std::string BohemianFamily::name() const {
  return std::visit(overloaded{[](const HessenbergToeplitz& k) { return "toeplitz(" + std::to_string(k.dim) + ")"; },
                               [](const SkewPentadiagonal& k) { return "skewpenta(" + std::to_string(k.dim) + ")"; },
                               [](const CustomPattern& k) { return "custom(" + std::to_string(k.dim) + ")"; }},
                    kind_);
}

exact::BigInt family_size(const BohemianFamily& family, const Population& population) {
  exact::BigInt size;
  mpz_ui_pow_ui(size.get_mpz_t(), population.size(), family.parameter_count());
  return size;
}

Enumerator::Enumerator(const BohemianFamily& family, const Population& population)
    : slots_(family.parameter_count()), radix_(population.size()) {
  const exact::BigInt size = family_size(family, population);
  if (size > exact::BigInt(std::to_string(UINT64_MAX)))
    throw CapExceeded("family of " + size.get_str() + " matrices exceeds 64-bit enumeration");
  size_ = std::stoull(size.get_str());
}

std::vector<std::size_t> Enumerator::assignment(std::uint64_t index) const {
  if (index >= size_) throw InvalidArgument("enumeration index out of range");
  std::vector<std::size_t> a(slots_);
  for (std::size_t s = slots_; s-- > 0;) {
    a[s] = static_cast<std::size_t>(index % radix_);
    index /= radix_;
  }
  return a;
}

std::uint64_t Enumerator::index_of(std::span<const std::size_t> assignment) const {
  if (assignment.size() != slots_) throw InvalidArgument("assignment length mismatch");
  std::uint64_t index = 0;
  for (std::size_t v : assignment) {
    if (v >= radix_) throw InvalidArgument("assignment value outside population");
    index = index * radix_ + v;
  }
  return index;
}

bool Enumerator::next(std::vector<std::size_t>& assignment) const {
  for (std::size_t s = slots_; s-- > 0;) {
    if (++assignment[s] < radix_) return true;
    assignment[s] = 0;
  }
  return false;
}

template <typename T>
linalg::DenseMatrix<T> build_matrix_from_values(const BohemianFamily& family, std::span<const T> t,
                                                const std::function<T(const GaussianRational&)>& fixed) {
  if (t.size() != family.parameter_count())
    throw InvalidArgument("expected " + std::to_string(family.parameter_count()) + " slot values, got " +
                          std::to_string(t.size()));
  const std::size_t n = family.dimension();
  linalg::DenseMatrix<T> a(n);
  const T zero = fixed(GaussianRational(0));
  for (auto& x : a.data) x = zero;
  std::visit(overloaded{[&](const HessenbergToeplitz&) {
                          const T minus_one = fixed(GaussianRational(-1));
                          for (std::size_t i = 0; i < n; ++i) {
                            for (std::size_t j = i; j < n; ++j) a(i, j) = t[j - i];
                            if (i + 1 < n) a(i + 1, i) = minus_one;
                          }
                        },
                        [&](const SkewPentadiagonal&) {
                          for (std::size_t k = 0; k + 1 < n; ++k) {
                            a(k, k + 1) = t[k];
                            a(k + 1, k) = -t[k];
                          }
                          for (std::size_t k = 0; k + 2 < n; ++k) {
                            a(k, k + 2) = t[n - 1 + k];
                            a(k + 2, k) = -t[n - 1 + k];
                          }
                        },
                        [&](const CustomPattern& p) {
                          for (std::size_t k = 0; k < n * n; ++k) {
                            const PatternCell& c = p.cells[k];
                            switch (c.kind) {
                              case PatternCell::Kind::fixed: a.data[k] = fixed(c.value); break;
                              case PatternCell::Kind::slot: a.data[k] = t[c.slot - 1]; break;
                              case PatternCell::Kind::negated_slot: a.data[k] = -t[c.slot - 1]; break;
                            }
                          }
                        }},
             family.kind());
  return a;
}

template linalg::DenseMatrix<Complex> build_matrix_from_values(const BohemianFamily&, std::span<const Complex>,
                                                               const std::function<Complex(const GaussianRational&)>&);
template linalg::DenseMatrix<GaussianRational> build_matrix_from_values(
    const BohemianFamily&, std::span<const GaussianRational>,
    const std::function<GaussianRational(const GaussianRational&)>&);

namespace {

template <typename T>
std::vector<T> slot_values(const std::vector<T>& values, std::span<const std::size_t> assignment) {
  std::vector<T> t;
  t.reserve(assignment.size());
  for (std::size_t v : assignment) {
    if (v >= values.size()) throw InvalidArgument("assignment value outside population");
    t.push_back(values[v]);
  }
  return t;
}

}  // namespace

ComplexMatrix build_matrix(const BohemianFamily& family, const Population& population,
                           std::span<const std::size_t> assignment) {
  const std::vector<Complex> t = slot_values(population.approx(), assignment);
  return build_matrix_from_values<Complex>(family, t, [](const GaussianRational& g) { return g.to_complex(); });
}

ExactMatrix build_exact_matrix(const BohemianFamily& family, const Population& population,
                               std::span<const std::size_t> assignment) {
  const std::vector<GaussianRational> t = slot_values(population.exact(), assignment);
  return build_matrix_from_values<GaussianRational>(family, t, [](const GaussianRational& g) { return g; });
}

ExactPoly charpoly_hessenberg_toeplitz(std::span<const GaussianRational> t) {
  if (t.empty()) throw InvalidArgument("charpoly_hessenberg_toeplitz needs at least one parameter");
  std::vector<ExactPoly> entries;
  entries.reserve(t.size());
  entries.push_back(ExactPoly::linear(t[0], GaussianRational(-1)));
  for (std::size_t k = 1; k < t.size(); ++k) entries.push_back(ExactPoly::constant(t[k]));
  return det_hessenberg_toeplitz<ExactPoly>(entries);
}

ExactPoly charpoly(const ExactMatrix& a) {
  const std::size_t n = a.n;
  if (n == 0) throw InvalidArgument("charpoly of an empty matrix");
  // Berkowitz: vec holds det(lambda I - A[k:, k:]) coefficients, descending.
  std::vector<GaussianRational> vec{GaussianRational(1), -a(n - 1, n - 1)};
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t s = n - k;  // size of A[k:, k:]
    // diags = [1, -a_kk, -R C, -R A' C, ..., -R A'^(s-2) C]
    std::vector<GaussianRational> diags{GaussianRational(1), -a(k, k)};
    std::vector<GaussianRational> col(s - 1);
    for (std::size_t i = 0; i + 1 < s; ++i) col[i] = a(k + 1 + i, k);
    for (std::size_t p = 0; p + 1 < s; ++p) {
      GaussianRational rc;
      for (std::size_t j = 0; j + 1 < s; ++j) rc += a(k, k + 1 + j) * col[j];
      diags.push_back(-rc);
      if (p + 2 < s) {
        std::vector<GaussianRational> next(s - 1);
        for (std::size_t i = 0; i + 1 < s; ++i)
          for (std::size_t j = 0; j + 1 < s; ++j) next[i] += a(k + 1 + i, k + 1 + j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<GaussianRational> out(s + 1);
    for (std::size_t i = 0; i <= s; ++i)
      for (std::size_t j = 0; j < s && j <= i; ++j) out[i] += diags[i - j] * vec[j];
    vec = std::move(out);
  }
  // det(A - lambda I) = (-1)^n det(lambda I - A)
  std::vector<GaussianRational> asc(n + 1);
  for (std::size_t k = 0; k <= n; ++k) asc[k] = (n % 2 == 0) ? vec[n - k] : -vec[n - k];
  return ExactPoly(std::move(asc));
}

GaussianRational exact_determinant(ExactMatrix a) {
  const std::size_t n = a.n;
  if (n == 0) return GaussianRational(1);
  GaussianRational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return GaussianRational(0);
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const GaussianRational f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::vector<Complex> exact_multiplicity_spectrum(const ExactMatrix& a) {
  std::vector<Complex> out;
  out.reserve(a.n);
  for (const auto& [factor, multiplicity] : square_free_factorization(charpoly(a))) {
    std::vector<Complex> c;
    for (const auto& x : factor.coeffs()) c.push_back(x.to_complex());
    const auto roots = poly::aberth_roots(poly::ComplexPolynomial(std::move(c)), 1e-14, 2000).roots;
    for (const Complex& r : roots) out.insert(out.end(), static_cast<std::size_t>(multiplicity), r);
  }
  return out;
}

namespace {

bool has_cluster(std::span<const Complex> eig, double radius) {
  for (std::size_t i = 0; i < eig.size(); ++i)
    for (std::size_t j = i + 1; j < eig.size(); ++j)
      if (std::abs(eig[i] - eig[j]) < radius) return true;
  return false;
}

}  // namespace

void for_each_spectrum(const BohemianFamily& family, const Population& population, const SpectrumOptions& options,
                       const std::function<void(std::uint64_t, const ComplexMatrix&, std::span<const Complex>,
                                                std::size_t)>& visit) {
  const Enumerator e(family, population);
  parallel_for_ranges(e.size(), options.threads, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    if (begin == end) return;
    linalg::EigenWorkspace ws;
    std::vector<std::size_t> assignment = e.assignment(begin);
    ComplexMatrix work;
    for (std::size_t index = begin; index < end; ++index) {
      const ComplexMatrix a = build_matrix(family, population, assignment);
      work = a;
      try {
        const std::vector<Complex>& eig = ws.solve(work, options.eigen);
        if (options.cluster_radius > 0 && has_cluster(eig, options.cluster_radius * linalg::frobenius_norm(a))) {
          const std::vector<Complex> refined =
              exact_multiplicity_spectrum(build_exact_matrix(family, population, assignment));
          visit(index, a, refined, worker);
        } else {
          visit(index, a, eig, worker);
        }
      } catch (const ConvergenceFailure& failure) {
        throw MatrixEigenFailure(index, failure.what());
      }
      e.next(assignment);
    }
  });
}

raster::DensityGrid density_plot(const BohemianFamily& family, const Population& population, const Window& window,
                                 std::size_t bins_w, std::size_t bins_h, const SpectrumOptions& options) {
  raster::DensityGrid total(bins_w, bins_h, window);
  const Enumerator e(family, population);
  std::vector<raster::DensityGrid> partial(worker_count(e.size(), options.threads), total);
  for_each_spectrum(family, population, options,
                    [&](std::uint64_t, const ComplexMatrix&, std::span<const Complex> eig, std::size_t worker) {
                      raster::accumulate(partial[worker], eig);
                    });
  for (const auto& p : partial) raster::merge(total, p);
  return total;
}

std::uint64_t distinct_root_count(std::span<const ExactPoly> polys) {
  // Roots shared between two square-free polynomials are exactly the roots of
  // their gcd. Floating-point roots only nominate candidate pairs; every
  // shared root is confirmed by an exact gcd.
  constexpr double cell = 1e-5;
  using Key = std::pair<long long, long long>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<long long>()(k.first) * 1000003u ^ std::hash<long long>()(k.second);
    }
  };
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets;
  std::vector<ExactPoly> simple;
  std::uint64_t count = 0;
  for (const ExactPoly& p : polys) {
    if (p.degree() < 1) continue;
    const ExactPoly s = square_free_part(p);
    const std::size_t self = simple.size();
    std::vector<Complex> roots;
    bool screened = true;
    try {
      std::vector<Complex> c;
      for (const auto& x : s.coeffs()) c.push_back(x.to_complex());
      roots = poly::aberth_roots(poly::ComplexPolynomial(std::move(c)), 1e-14, 2000).roots;
    } catch (const ConvergenceFailure&) {
      screened = false;
    }
    std::set<std::size_t> candidates;
    if (screened) {
      for (const Complex& r : roots) {
        const auto kx = static_cast<long long>(std::floor(r.real() / cell));
        const auto ky = static_cast<long long>(std::floor(r.imag() / cell));
        for (long long dx = -1; dx <= 1; ++dx)
          for (long long dy = -1; dy <= 1; ++dy)
            if (auto it = buckets.find({kx + dx, ky + dy}); it != buckets.end())
              candidates.insert(it->second.begin(), it->second.end());
      }
    } else {
      for (std::size_t j = 0; j < self; ++j) candidates.insert(j);
    }
    ExactPoly shared = ExactPoly::constant(GaussianRational(1));
    for (std::size_t j : candidates) {
      const ExactPoly g = gcd(s, simple[j]);
      if (g.degree() >= 1) shared = lcm(shared, g);
    }
    count += static_cast<std::uint64_t>(s.degree() - shared.degree());
    simple.push_back(s);
    for (const Complex& r : roots) {
      const Key key{static_cast<long long>(std::floor(r.real() / cell)),
                    static_cast<long long>(std::floor(r.imag() / cell))};
      auto& bucket = buckets[key];
      if (bucket.empty() || bucket.back() != self) bucket.push_back(self);
    }
  }
  return count;
}

namespace {

struct StatsAccumulator {
  std::set<ExactPoly> charpolys;
  FamilyStatistics stats;

  void add(const ExactPoly& p) {
    ++stats.matrix_count;
    if (p.coeff(0).is_zero()) ++stats.singular_count;
    if (gcd(p, p.derivative()).degree() >= 1) ++stats.multiple_eigenvalue_matrix_count;
    charpolys.insert(p);
  }

  FamilyStatistics finish() {
    stats.distinct_charpoly_count = charpolys.size();
    const std::vector<ExactPoly> distinct(charpolys.begin(), charpolys.end());
    stats.distinct_eigenvalue_count = distinct_root_count(distinct);
    return stats;
  }
};

ExactPoly member_charpoly(const BohemianFamily& family, const Population& population,
                          std::span<const std::size_t> assignment) {
  if (std::holds_alternative<HessenbergToeplitz>(family.kind())) {
    const std::vector<GaussianRational> t = slot_values(population.exact(), assignment);
    return charpoly_hessenberg_toeplitz(t);
  }
  return charpoly(build_exact_matrix(family, population, assignment));
}

}  // namespace

FamilyStatistics family_statistics(const BohemianFamily& family, const Population& population,
                                   const StatisticsOptions& options) {
  const exact::BigInt size = family_size(family, population);
  if (size > exact::BigInt(std::to_string(options.max_matrices)))
    throw CapExceeded("exact statistics over " + size.get_str() + " matrices exceed the cap of " +
                      std::to_string(options.max_matrices) + "; use sampled statistics instead");
  const Enumerator e(family, population);
  StatsAccumulator acc;
  std::vector<std::size_t> assignment(family.parameter_count(), 0);
  do {
    acc.add(member_charpoly(family, population, assignment));
  } while (e.next(assignment));
  return acc.finish();
}

FamilyStatistics family_statistics_sampled(const BohemianFamily& family, const Population& population,
                                           std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("sampled statistics need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  StatsAccumulator acc;
  std::vector<std::size_t> assignment(family.parameter_count());
  for (std::uint64_t k = 0; k < samples; ++k) {
    for (auto& v : assignment) v = pick(rng);
    acc.add(member_charpoly(family, population, assignment));
  }
  return acc.finish();
}

std::string format_statistics(const FamilyStatistics& s) {
  std::ostringstream os;
  os << "matrix_count: " << s.matrix_count << '\n'
     << "distinct_charpoly_count: " << s.distinct_charpoly_count << '\n'
     << "distinct_eigenvalue_count: " << s.distinct_eigenvalue_count << '\n'
     << "singular_count: " << s.singular_count << '\n'
     << "multiple_eigenvalue_matrix_count: " << s.multiple_eigenvalue_matrix_count << '\n';
  return os.str();
}

}  // namespace dlab::bohemian
