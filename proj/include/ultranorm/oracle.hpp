#pragma once

// Brute-force ground truth over prime fields.
//
// Points of F_q^n are indexed lexicographically as in enumerate_space(), and
// maps F_q^n -> F_q^n are stored as image-index tables. The isometry search
// assigns images point by point and prunes on the first pairwise distance that
// is not preserved.
//
// Counts predicted by the axial form (sigma free in S_n, each tau_i any
// bijection of F_q, translations absorbed into the tau_i):
//   one-norm, all maps:  n! (q!)^n        centred: n! ((q-1)!)^n
// and under the sup-norm with the trivial valuation every bijection is an
// isometry: (q^n)! maps, (q^n - 1)! centred.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ultranorm/betweenness.hpp"
#include "ultranorm/error.hpp"
#include "ultranorm/isometry.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

using PointMap = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultEnumerationPoints = 9;
inline constexpr std::size_t kDefaultTripleCap = 10'000'000;

namespace detail {

inline std::optional<std::uint64_t> factorial(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (out > UINT64_MAX / i) return std::nullopt;
    out *= i;
  }
  return out;
}

inline std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  if (*b != 0 && *a > UINT64_MAX / *b) return std::nullopt;
  return *a * *b;
}

inline std::optional<std::uint64_t> checked_pow(std::optional<std::uint64_t> base, std::uint64_t exponent) {
  std::optional<std::uint64_t> out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

inline std::size_t space_size(std::uint32_t q, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  return total;
}

}  // namespace detail

/// Closed-form isometry count, when one is known for this norm.
inline std::optional<std::uint64_t> predicted_isometry_count(std::uint32_t q, std::size_t n, const NormSpec& spec, bool centred) {
  switch (spec.kind()) {
    case NormKind::one:
      return detail::checked_mul(detail::factorial(n), detail::checked_pow(detail::factorial(centred ? q - 1 : q), n));
    case NormKind::sup: {
      const auto points = detail::space_size(q, n);
      return detail::factorial(centred ? points - 1 : points);
    }
    case NormKind::weighted_sup: return std::nullopt;
  }
  return std::nullopt;
}

struct NonAxialWitness {
  std::size_t map_index;
  std::string reason;
};

struct EnumerationResult {
  std::uint32_t q = 0;
  std::size_t n = 0;
  NormSpec norm = NormSpec::one_norm();
  bool centred = false;
  std::optional<std::uint64_t> search_space;  // bijections a naive filter would examine
  std::uint64_t nodes_visited = 0;
  std::size_t isometry_count = 0;
  std::size_t axial_count = 0;
  std::vector<NonAxialWitness> non_axial;
  std::vector<PointMap> maps;  // lexicographic order
  std::chrono::nanoseconds duration{0};

  std::optional<std::uint64_t> formula() const { return predicted_isometry_count(q, n, norm, centred); }
};

/// Decomposes a complete point map; nullopt on success, the reason otherwise.
inline std::optional<std::string> classify_axial(const std::vector<Vector>& points, const PointMap& map) {
  std::vector<Vector> images;
  images.reserve(map.size());
  for (auto index : map) images.push_back(points[index]);
  try {
    ProbeMap probes(points, images, true);
    const auto iso = decompose(probes);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(iso(points[i]) == images[i])) return "round trip differs at (" + points[i].to_string() + ")";
    }
    return std::nullopt;
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

/// Every distance-preserving bijection of F_q^n under `spec`, found by
/// backtracking. `max_points` bounds q^n; `jobs` splits the root branches.
inline EnumerationResult enumerate_isometries(std::uint32_t q, std::size_t n, const NormSpec& spec, bool centred,
                                              std::size_t max_points = kDefaultEnumerationPoints, unsigned jobs = 1) {
  const auto started = std::chrono::steady_clock::now();
  const auto field = FieldSpec::prime_field(q);
  if (n == 0) throw InvalidArgument("dimension must be positive");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > max_points) {
      throw EnumerationTooLarge(n, "q^n exceeds " + std::to_string(max_points) + " points for the bijection search");
    }
  }
  const auto points = enumerate_space(field, n, max_points);
  const std::size_t N = points.size();

  // Distances as ranks into the sorted list of distinct values.
  std::vector<Magnitude> values;
  std::vector<Magnitude> raw(N * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) raw[i * N + j] = distance(points[i], points[j], spec);
  }
  values = raw;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::uint32_t> dist(N * N);
  for (std::size_t k = 0; k < N * N; ++k) {
    dist[k] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), raw[k]) - values.begin());
  }

  struct Branch {
    std::vector<PointMap> maps;
    std::uint64_t nodes = 0;
  };
  // Position 0 is the origin. A centred search pins it, so branching starts at 1.
  const std::size_t root = centred ? 1 : 0;
  std::vector<std::uint32_t> root_images;
  for (std::uint32_t image = centred ? 1 : 0; image < N; ++image) root_images.push_back(image);
  std::vector<Branch> branches(root_images.size());

  auto run_branch = [&](std::size_t b) {
    Branch& out = branches[b];
    PointMap map(N, 0);
    std::vector<bool> used(N, false);
    if (centred) used[0] = true;
    map[root] = root_images[b];
    used[root_images[b]] = true;
    ++out.nodes;
    if (centred && dist[0 * N + root] != dist[0 * N + map[root]]) return;

    auto recurse = [&](auto&& self, std::size_t pos) -> void {
      if (pos == N) {
        out.maps.push_back(map);
        return;
      }
      for (std::uint32_t image = 0; image < N; ++image) {
        if (used[image]) continue;
        ++out.nodes;
        bool ok = true;
        for (std::size_t prev = 0; prev < pos && ok; ++prev) ok = dist[prev * N + pos] == dist[map[prev] * N + image];
        if (!ok) continue;
        map[pos] = image;
        used[image] = true;
        self(self, pos + 1);
        used[image] = false;
      }
    };
    recurse(recurse, root + 1);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(branches.size())));
  if (workers == 1) {
    for (std::size_t b = 0; b < branches.size(); ++b) run_branch(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b; (b = next.fetch_add(1)) < branches.size();) run_branch(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  EnumerationResult result;
  result.q = q;
  result.n = n;
  result.norm = spec;
  result.centred = centred;
  result.search_space = detail::factorial(centred ? N - 1 : N);
  for (auto& branch : branches) {
    result.nodes_visited += branch.nodes;
    for (auto& m : branch.maps) result.maps.push_back(std::move(m));
  }
  result.isometry_count = result.maps.size();
  for (std::size_t i = 0; i < result.maps.size(); ++i) {
    if (auto reason = classify_axial(points, result.maps[i])) {
      result.non_axial.push_back({i, std::move(*reason)});
    } else {
      ++result.axial_count;
    }
  }
  result.duration = std::chrono::steady_clock::now() - started;
  return result;
}

/// The set of point maps of every axial isometry of F_q^n: all sigma in S_n
/// and all n-tuples of permutations of F_q. Generated directly from the
/// formula, independently of any distance computation.
inline std::set<PointMap> generate_axial_maps(std::uint32_t q, std::size_t n, bool centred, std::size_t max_maps = 1'000'000) {
  const auto predicted = predicted_isometry_count(q, n, NormSpec::one_norm(), centred);
  if (!predicted || *predicted > max_maps) throw EnumerationTooLarge(n, "too many axial maps to generate");
  const std::size_t N = detail::space_size(q, n);

  std::vector<std::vector<std::uint32_t>> perms;  // of F_q, fixing 0 when centred
  std::vector<std::uint32_t> p(q);
  std::iota(p.begin(), p.end(), 0u);
  do {
    if (!centred || p[0] == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::set<PointMap> out;
  std::vector<std::size_t> choice(n, 0);
  do {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      PointMap map(N);
      for (std::size_t x = 0; x < N; ++x) {
        std::vector<std::uint32_t> digits(n);
        for (std::size_t i = n, rest = x; i-- > 0; rest /= q) digits[i] = static_cast<std::uint32_t>(rest % q);
        std::size_t image = 0;
        for (std::size_t i = 0; i < n; ++i) image = image * q + perms[choice[i]][digits[sigma[i]]];
        map[x] = static_cast<std::uint32_t>(image);
      }
      out.insert(std::move(map));
      std::size_t i = 0;
      while (i < n && ++choice[i] == perms.size()) choice[i++] = 0;
      if (i == n) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

struct BetweennessReport {
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::uint64_t triples = 0;
  std::uint64_t between = 0;
  std::uint64_t mismatches = 0;
  std::optional<std::tuple<Vector, Vector, Vector>> first_mismatch;  // (x, z, y)

  bool ok() const noexcept { return mismatches == 0; }
};

/// Runs both betweenness predicates on every triple (x, z, y) of F_q^n.
inline BetweennessReport exhaustive_betweenness_check(std::uint32_t q, std::size_t n, std::uint64_t cap = kDefaultTripleCap) {
  const auto field = FieldSpec::prime_field(q);
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < 3 * n; ++i) {
    size *= q;
    if (size > cap) throw EnumerationTooLarge(n, "q^(3n) triples exceed the cap of " + std::to_string(cap));
  }
  const auto points = enumerate_space(field, n, static_cast<std::size_t>(cap));
  BetweennessReport report;
  report.q = q;
  report.n = n;
  for (const auto& x : points) {
    for (const auto& z : points) {
      for (const auto& y : points) {
        ++report.triples;
        const bool metric = is_metrically_between(x, z, y);
        report.between += metric ? 1 : 0;
        if (metric != coordinate_between(x, z, y)) {
          if (report.mismatches++ == 0) report.first_mismatch.emplace(x, z, y);
        }
      }
    }
  }
  return report;
}

struct ClosureReport {
  std::size_t size = 0;
  bool has_identity = false;
  bool closed_under_composition = true;
  bool closed_under_inverse = true;
  std::size_t failures = 0;

  bool ok() const noexcept { return has_identity && closed_under_composition && closed_under_inverse; }
};

/// Checks that a set of bijections of {0..N-1} is a group.
inline ClosureReport group_closure_check(const std::vector<PointMap>& maps) {
  ClosureReport report;
  const std::set<PointMap> members(maps.begin(), maps.end());
  report.size = members.size();
  if (members.empty()) return report;
  const std::size_t N = members.begin()->size();
  PointMap identity(N);
  std::iota(identity.begin(), identity.end(), 0u);
  report.has_identity = members.count(identity) > 0;

  PointMap scratch(N);
  for (const auto& f : members) {
    for (std::uint32_t x = 0; x < N; ++x) scratch[f[x]] = x;
    if (!members.count(scratch)) {
      report.closed_under_inverse = false;
      ++report.failures;
    }
    for (const auto& g : members) {
      for (std::uint32_t x = 0; x < N; ++x) scratch[x] = f[g[x]];
      if (!members.count(scratch)) {
        report.closed_under_composition = false;
        ++report.failures;
      }
    }
  }
  return report;
}

inline ClosureReport group_closure_check(const EnumerationResult& result) { return group_closure_check(result.maps); }

}  // namespace ultranorm
