#pragma once

// Axial isometries of (K^n, ||.||_1):
//
//   phi(a_1, ..., a_n)_i = t_i + tau_i(a_sigma(i))
//
// with sigma a permutation of the coordinates, tau_i isometries of K and t a
// translation. Every isometry of the taxicab space has this shape; decompose()
// recovers (t, sigma, tau) from a finite probe table by probing the axes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ultranorm/error.hpp"
#include "ultranorm/field.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

/// A lookup-form scalar isometry was evaluated off its probe set.
class OutsideDomain : public Error {
 public:
  explicit OutsideDomain(const Scalar& point)
      : Error("outside-domain", "scalar map is not known at " + point.to_string()), point_(point) {}

  const Scalar& point() const noexcept { return point_; }

 private:
  Scalar point_;
};

/// decompose() met a probe that no axial isometry explains.
class DecompositionFailure : public Error {
 public:
  DecompositionFailure(Vector probe, Vector image, const std::string& reason)
      : Error("decomposition-failure",
              reason + " at probe (" + probe.to_string() + ") -> (" + image.to_string() + ")"),
        probe_(std::move(probe)),
        image_(std::move(image)) {}

  const Vector& probe() const noexcept { return probe_; }
  const Vector& image() const noexcept { return image_; }

 private:
  Vector probe_;
  Vector image_;
};

/// The probe table does not pin the map down. `axis()` names the input axis
/// that lacks probes, when there is one.
class UnderDetermined : public Error {
 public:
  UnderDetermined(std::optional<std::size_t> axis, const std::string& what)
      : Error("under-determined", what), axis_(axis) {}

  std::optional<std::size_t> axis() const noexcept { return axis_; }

 private:
  std::optional<std::size_t> axis_;
};

/// An isometry tau of (K, |.|). Three representations:
///  - affine a -> u a + c with |u| = 1 (any field);
///  - table: an explicit permutation of F_q given by the images of 0..q-1;
///  - lookup: a finite partial map, produced when a probe set admits no
///    affine fit. Evaluating it elsewhere throws OutsideDomain.
class ScalarIsometry {
 public:
  struct Affine {
    Scalar unit;
    Scalar shift;
  };
  struct Table {
    FieldSpec field;
    std::vector<std::uint32_t> images;
  };
  struct Lookup {
    FieldSpec field;
    std::vector<std::pair<Scalar, Scalar>> entries;  // sorted by argument
  };

  static ScalarIsometry identity(const FieldSpec& field) { return ScalarIsometry(Affine{Scalar::one(field), Scalar::zero(field)}); }

  static ScalarIsometry affine(Scalar unit, Scalar shift) {
    if (!(unit.field() == shift.field())) throw FieldMismatch("affine coefficients over different fields");
    if (valuation(unit) != Magnitude::one()) {
      throw InvalidArgument("affine isometry needs |u| = 1, got |" + unit.to_string() + "| = " + valuation(unit).to_string());
    }
    return ScalarIsometry(Affine{std::move(unit), std::move(shift)});
  }

  static ScalarIsometry table(const FieldSpec& field, std::vector<std::uint32_t> images) {
    if (!field.is_finite()) throw InvalidArgument("table isometries need a finite field, got " + field.to_string());
    if (images.size() != field.prime()) {
      throw InvalidArgument("table over " + field.to_string() + " needs " + std::to_string(field.prime()) + " images");
    }
    std::vector<bool> seen(images.size(), false);
    for (auto image : images) {
      if (image >= images.size() || seen[image]) throw InvalidArgument("table is not a permutation of " + field.to_string());
      seen[image] = true;
    }
    return ScalarIsometry(Table{field, std::move(images)});
  }

  /// Validates injectivity and |tau(a) - tau(b)| = |a - b| on all entries.
  static ScalarIsometry lookup(const FieldSpec& field, std::vector<std::pair<Scalar, Scalar>> entries) {
    if (entries.empty()) throw InvalidArgument("lookup isometry needs at least one entry");
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!(entries[i].first.field() == field) || !(entries[i].second.field() == field)) {
        throw FieldMismatch("lookup entry is not over " + field.to_string());
      }
      if (i > 0 && entries[i - 1].first == entries[i].first) throw InvalidArgument("duplicate lookup argument " + entries[i].first.to_string());
      for (std::size_t j = 0; j < i; ++j) {
        if (valuation(entries[i].second - entries[j].second) != valuation(entries[i].first - entries[j].first)) {
          throw InvalidArgument("lookup does not preserve |a - b| at " + entries[j].first.to_string() + ", " + entries[i].first.to_string());
        }
      }
    }
    return ScalarIsometry(Lookup{field, std::move(entries)});
  }

  const FieldSpec& field() const {
    return std::visit(
        [](const auto& form) -> const FieldSpec& {
          using T = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<T, Affine>) return form.unit.field();
          else return form.field;
        },
        form_);
  }

  const std::variant<Affine, Table, Lookup>& form() const noexcept { return form_; }
  bool is_affine() const noexcept { return std::holds_alternative<Affine>(form_); }
  bool is_table() const noexcept { return std::holds_alternative<Table>(form_); }
  bool is_lookup() const noexcept { return std::holds_alternative<Lookup>(form_); }

  Scalar operator()(const Scalar& a) const {
    if (!(a.field() == field())) throw FieldMismatch("argument over " + a.field().to_string() + " for a map over " + field().to_string());
    return std::visit(
        [&a](const auto& form) -> Scalar {
          using T = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<T, Affine>) {
            return form.unit * a + form.shift;
          } else if constexpr (std::is_same_v<T, Table>) {
            return Scalar(form.field, static_cast<long long>(form.images[a.residue()]));
          } else {
            auto it = std::lower_bound(form.entries.begin(), form.entries.end(), a, [](const auto& e, const Scalar& x) { return e.first < x; });
            if (it == form.entries.end() || !(it->first == a)) throw OutsideDomain(a);
            return it->second;
          }
        },
        form_);
  }

  bool fixes_zero() const {
    try {
      return (*this)(Scalar::zero(field())).is_zero();
    } catch (const OutsideDomain&) {
      return false;
    }
  }

  /// The images of 0..q-1; only for finite fields.
  std::vector<std::uint32_t> as_table() const {
    const auto& f = field();
    if (!f.is_finite()) throw InvalidArgument("as_table needs a finite field");
    std::vector<std::uint32_t> images(f.prime());
    for (std::uint32_t a = 0; a < f.prime(); ++a) images[a] = (*this)(Scalar(f, static_cast<long long>(a))).residue();
    return images;
  }

 private:
  explicit ScalarIsometry(std::variant<Affine, Table, Lookup> form) : form_(std::move(form)) {}

  std::variant<Affine, Table, Lookup> form_;
};

inline ScalarIsometry invert(const ScalarIsometry& tau) {
  if (const auto* f = std::get_if<ScalarIsometry::Affine>(&tau.form())) {
    const auto inv = f->unit.inverse();
    return ScalarIsometry::affine(inv, -(inv * f->shift));
  }
  if (const auto* t = std::get_if<ScalarIsometry::Table>(&tau.form())) {
    std::vector<std::uint32_t> images(t->images.size());
    for (std::uint32_t a = 0; a < images.size(); ++a) images[t->images[a]] = a;
    return ScalarIsometry::table(t->field, std::move(images));
  }
  const auto& l = std::get<ScalarIsometry::Lookup>(tau.form());
  std::vector<std::pair<Scalar, Scalar>> entries;
  for (const auto& [a, b] : l.entries) entries.emplace_back(b, a);
  return ScalarIsometry::lookup(l.field, std::move(entries));
}

/// outer o inner.
inline ScalarIsometry compose(const ScalarIsometry& outer, const ScalarIsometry& inner) {
  if (!(outer.field() == inner.field())) throw FieldMismatch("composing scalar maps over different fields");
  const auto& field = outer.field();
  const auto* fo = std::get_if<ScalarIsometry::Affine>(&outer.form());
  const auto* fi = std::get_if<ScalarIsometry::Affine>(&inner.form());
  if (fo && fi) return ScalarIsometry::affine(fo->unit * fi->unit, fo->unit * fi->shift + fo->shift);

  if (inner.is_lookup() || outer.is_lookup()) {
    std::vector<std::pair<Scalar, Scalar>> entries;
    if (const auto* li = std::get_if<ScalarIsometry::Lookup>(&inner.form())) {
      for (const auto& [a, b] : li->entries) {
        try {
          entries.emplace_back(a, outer(b));
        } catch (const OutsideDomain&) {
        }
      }
    } else {
      const auto back = invert(inner);
      for (const auto& [b, c] : std::get<ScalarIsometry::Lookup>(outer.form()).entries) entries.emplace_back(back(b), c);
    }
    if (entries.empty()) throw InvalidArgument("composition of lookups has an empty domain");
    return ScalarIsometry::lookup(field, std::move(entries));
  }

  std::vector<std::uint32_t> images(field.prime());
  for (std::uint32_t a = 0; a < field.prime(); ++a) images[a] = outer(inner(Scalar(field, static_cast<long long>(a)))).residue();
  return ScalarIsometry::table(field, std::move(images));
}

class AxialIsometry {
 public:
  /// sigma[i] is the input coordinate read by output coordinate i.
  AxialIsometry(std::vector<std::size_t> sigma, std::vector<ScalarIsometry> taus, Vector translation)
      : sigma_(std::move(sigma)), taus_(std::move(taus)), translation_(std::move(translation)) {
    const std::size_t n = translation_.size();
    if (sigma_.size() != n || taus_.size() != n) {
      throw DimensionMismatch("axial isometry with " + std::to_string(sigma_.size()) + " sigma entries, " +
                              std::to_string(taus_.size()) + " scalar maps and a translation of dimension " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (auto s : sigma_) {
      if (s >= n || seen[s]) throw InvalidArgument("sigma is not a permutation of 0.." + std::to_string(n - 1));
      seen[s] = true;
    }
    for (const auto& tau : taus_) {
      if (!(tau.field() == translation_.field())) throw FieldMismatch("scalar map over " + tau.field().to_string());
    }
  }

  static AxialIsometry identity(const FieldSpec& field, std::size_t n) {
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    return AxialIsometry(std::move(sigma), std::vector<ScalarIsometry>(n, ScalarIsometry::identity(field)), Vector::zero(field, n));
  }

  const FieldSpec& field() const noexcept { return translation_.field(); }
  std::size_t size() const noexcept { return sigma_.size(); }
  const std::vector<std::size_t>& sigma() const noexcept { return sigma_; }
  const std::vector<ScalarIsometry>& taus() const noexcept { return taus_; }
  const Vector& translation() const noexcept { return translation_; }

  Vector operator()(const Vector& x) const {
    if (!(x.field() == field())) throw FieldMismatch("vector over " + x.field().to_string() + " for a map over " + field().to_string());
    if (x.size() != size()) throw DimensionMismatch("vector of dimension " + std::to_string(x.size()) + " for a map on dimension " + std::to_string(size()));
    std::vector<Scalar> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(translation_[i] + taus_[i](x[sigma_[i]]));
    return Vector(field(), std::move(out));
  }

  /// Fixes the origin with zero translation and every tau_i(0) = 0.
  bool is_centred() const {
    return translation_.is_zero() && std::all_of(taus_.begin(), taus_.end(), [](const auto& t) { return t.fixes_zero(); });
  }

 private:
  std::vector<std::size_t> sigma_;
  std::vector<ScalarIsometry> taus_;
  Vector translation_;
};

inline Vector apply(const AxialIsometry& iso, const Vector& x) { return iso(x); }

/// f o g. Output i of f reads coordinate j = sigma_f(i) of g's output, which
/// in turn reads sigma_g(j); g's translation is folded into the scalar maps.
inline AxialIsometry compose(const AxialIsometry& f, const AxialIsometry& g) {
  if (!(f.field() == g.field())) throw FieldMismatch("composing isometries over different fields");
  if (f.size() != g.size()) throw DimensionMismatch("composing isometries of different dimensions");
  const auto& field = f.field();
  std::vector<std::size_t> sigma(f.size());
  std::vector<ScalarIsometry> taus;
  taus.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t j = f.sigma()[i];
    sigma[i] = g.sigma()[j];
    const auto shift = ScalarIsometry::affine(Scalar::one(field), g.translation()[j]);
    taus.push_back(compose(f.taus()[i], compose(shift, g.taus()[j])));
  }
  return AxialIsometry(std::move(sigma), std::move(taus), f.translation());
}

inline AxialIsometry invert(const AxialIsometry& f) {
  const auto& field = f.field();
  const std::size_t n = f.size();
  std::vector<std::size_t> sigma(n);
  std::vector<std::optional<ScalarIsometry>> taus(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = f.sigma()[i];
    sigma[j] = i;
    const auto unshift = ScalarIsometry::affine(Scalar::one(field), -f.translation()[i]);
    taus[j] = compose(invert(f.taus()[i]), unshift);
  }
  std::vector<ScalarIsometry> out;
  out.reserve(n);
  for (auto& t : taus) out.push_back(std::move(*t));
  return AxialIsometry(std::move(sigma), std::move(out), Vector::zero(field, n));
}

/// A black-box map known only on finitely many points. `complete` marks a
/// domain that is the whole (finite) space.
class ProbeMap {
 public:
  ProbeMap(std::vector<Vector> domain, std::vector<Vector> images, bool complete)
      : domain_(std::move(domain)), images_(std::move(images)), complete_(complete) {
    if (domain_.size() != images_.size()) {
      throw InvalidArgument("probe map with " + std::to_string(domain_.size()) + " points and " + std::to_string(images_.size()) + " images");
    }
    if (domain_.empty()) throw InvalidArgument("probe map needs at least one point");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      Vector::check_compatible(domain_.front(), domain_[i]);
      Vector::check_compatible(domain_.front(), images_[i]);
      if (!index_.emplace(domain_[i], i).second) throw InvalidArgument("duplicate probe point (" + domain_[i].to_string() + ")");
    }
  }

  template <typename Map>
  static ProbeMap tabulate(const Map& map, std::vector<Vector> domain, bool complete) {
    std::vector<Vector> images;
    images.reserve(domain.size());
    for (const auto& x : domain) images.push_back(map(x));
    return ProbeMap(std::move(domain), std::move(images), complete);
  }

  const FieldSpec& field() const noexcept { return domain_.front().field(); }
  std::size_t dimension() const noexcept { return domain_.front().size(); }
  std::size_t size() const noexcept { return domain_.size(); }
  const std::vector<Vector>& domain() const noexcept { return domain_; }
  const std::vector<Vector>& images() const noexcept { return images_; }
  bool complete() const noexcept { return complete_; }

  std::optional<Vector> image_of(const Vector& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return images_[it->second];
  }

 private:
  std::vector<Vector> domain_;
  std::vector<Vector> images_;
  bool complete_;
  std::map<Vector, std::size_t> index_;
};

struct DistanceViolation {
  Vector a;
  Vector b;
  Magnitude domain_distance;
  Magnitude image_distance;
};

struct IsometryReport {
  static constexpr std::size_t kMaxRecorded = 16;

  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<DistanceViolation> violations;
  bool injective = true;
  std::optional<bool> surjective;  // only decided for complete probe maps

  bool ok() const noexcept { return violation_count == 0 && injective && surjective.value_or(true); }
};

/// Pairwise distance preservation and injectivity over the probe set, and
/// surjectivity onto the domain when the probe map is complete.
inline IsometryReport verify_isometry(const ProbeMap& m, const NormSpec& spec) {
  IsometryReport report;
  const auto& dom = m.domain();
  const auto& img = m.images();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      ++report.pairs_checked;
      auto before = distance(dom[i], dom[j], spec);
      auto after = distance(img[i], img[j], spec);
      if (after.is_zero()) report.injective = false;
      if (before == after) continue;
      ++report.violation_count;
      if (report.violations.size() < IsometryReport::kMaxRecorded) {
        report.violations.push_back({dom[i], dom[j], std::move(before), std::move(after)});
      }
    }
  }
  if (m.complete()) {
    bool onto = true;
    for (const auto& y : img) onto = onto && m.image_of(y).has_value();
    report.surjective = onto && report.injective;
  }
  return report;
}

/// Recovers (translation, sigma, taus) from a probe table of a taxicab
/// isometry.
///
/// The origin's image is the translation. After subtracting it, every probe
/// on input axis i must land on a single output axis j, and distinct input
/// axes must land on distinct output axes; then sigma(j) = i and tau_j is read
/// off the axis images. Over a prime field the whole axis must be probed and
/// tau_j becomes a table. Over the rationals tau_j is fitted as a -> u a from
/// the first axis probe and checked on the rest, falling back to a lookup over
/// the probed values. The reconstruction is finally compared with every probe.
inline AxialIsometry decompose(const ProbeMap& m) {
  const auto& field = m.field();
  const std::size_t n = m.dimension();
  const auto origin = Vector::zero(field, n);
  const auto origin_image = m.image_of(origin);
  if (!origin_image) throw UnderDetermined(std::nullopt, "probe set does not contain the origin");
  const Vector& translation = *origin_image;

  std::vector<std::optional<std::size_t>> target(n);
  std::vector<std::vector<std::pair<Scalar, Scalar>>> samples(n);
  std::vector<bool> claimed(n, false);
  for (std::size_t p = 0; p < m.size(); ++p) {
    const auto& x = m.domain()[p];
    if (x.nonzero_count() != 1) continue;
    const std::size_t i = static_cast<std::size_t>(std::find_if(x.begin(), x.end(), [](const Scalar& s) { return !s.is_zero(); }) - x.begin());
    const auto centred = m.images()[p] - translation;
    if (centred.nonzero_count() != 1) {
      throw DecompositionFailure(x, m.images()[p], "axis point does not map onto an axis");
    }
    const std::size_t j = static_cast<std::size_t>(std::find_if(centred.begin(), centred.end(), [](const Scalar& s) { return !s.is_zero(); }) - centred.begin());
    if (!target[i]) {
      if (claimed[j]) throw DecompositionFailure(x, m.images()[p], "two input axes map onto output axis " + std::to_string(j));
      target[i] = j;
      claimed[j] = true;
    } else if (*target[i] != j) {
      throw DecompositionFailure(x, m.images()[p], "axis " + std::to_string(i) + " is split between output axes " +
                                                       std::to_string(*target[i]) + " and " + std::to_string(j));
    }
    samples[i].emplace_back(x[i], centred[j]);
  }

  std::vector<std::size_t> sigma(n);
  std::vector<std::optional<ScalarIsometry>> taus(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!target[i]) throw UnderDetermined(i, "no nonzero probe on axis " + std::to_string(i));
    const std::size_t j = *target[i];
    sigma[j] = i;
    auto& axis = samples[i];
    if (field.is_finite()) {
      if (axis.size() != field.prime() - 1) {
        throw UnderDetermined(i, "axis " + std::to_string(i) + " has " + std::to_string(axis.size()) + " of " +
                                     std::to_string(field.prime() - 1) + " nonzero probes");
      }
      std::vector<std::uint32_t> images(field.prime(), 0);
      for (const auto& [a, b] : axis) images[a.residue()] = b.residue();
      try {
        taus[j] = ScalarIsometry::table(field, std::move(images));
      } catch (const InvalidArgument&) {
        throw DecompositionFailure(Vector::on_axis(field, n, i, axis.front().first),
                                   Vector::on_axis(field, n, j, axis.front().second) + translation, "axis map is not a bijection");
      }
      continue;
    }
    const Scalar unit = axis.front().second / axis.front().first;
    const bool affine = valuation(unit) == Magnitude::one() &&
                        std::all_of(axis.begin(), axis.end(), [&](const auto& s) { return unit * s.first == s.second; });
    if (affine) {
      taus[j] = ScalarIsometry::affine(unit, Scalar::zero(field));
    } else {
      axis.emplace_back(Scalar::zero(field), Scalar::zero(field));
      try {
        taus[j] = ScalarIsometry::lookup(field, axis);
      } catch (const InvalidArgument& e) {
        throw DecompositionFailure(Vector::on_axis(field, n, i, axis.front().first),
                                   Vector::on_axis(field, n, j, axis.front().second) + translation,
                                   std::string("axis map is not an isometry of K (") + e.what() + ")");
      }
    }
  }

  std::vector<ScalarIsometry> fitted;
  fitted.reserve(n);
  for (auto& t : taus) fitted.push_back(std::move(*t));
  AxialIsometry result(std::move(sigma), std::move(fitted), translation);

  for (std::size_t p = 0; p < m.size(); ++p) {
    const auto& x = m.domain()[p];
    Vector predicted = origin;
    try {
      predicted = result(x);
    } catch (const OutsideDomain& e) {
      throw UnderDetermined(std::nullopt, "probe (" + x.to_string() + ") uses coordinate value " + e.point().to_string() +
                                              " that no axis probe covers");
    }
    if (!(predicted == m.images()[p])) {
      throw DecompositionFailure(x, m.images()[p], "axial reconstruction predicts (" + predicted.to_string() + ")");
    }
  }
  return result;
}

/// A sup-norm isometry that is not axial: T(v) = v + e0 when ||v|| = ||v0||
/// and T(v) = v otherwise. Needs an ultrametric norm, a p-adic field and
/// ||e0|| < ||v0||.
inline ProbeMap make_remark2_counterexample(const FieldSpec& field, std::vector<Vector> probes, const Vector& v0, const Vector& e0,
                                            const NormSpec& spec = NormSpec::sup_norm()) {
  if (field.kind() != FieldKind::padic) {
    throw HypothesisViolation("needs a p-adic field; under the trivial valuation every nonzero sup-norm is 1");
  }
  if (!spec.is_ultrametric()) throw InvalidArgument("the construction needs an ultrametric norm, got " + spec.name());
  if (!(v0.field() == field)) throw FieldMismatch("v0 is not over " + field.to_string());
  Vector::check_compatible(v0, e0);
  const auto radius = norm(v0, spec);
  if (!(norm(e0, spec) < radius)) {
    throw HypothesisViolation("needs ||e0|| < ||v0||, got " + norm(e0, spec).to_string() + " and " + radius.to_string());
  }
  return ProbeMap::tabulate([&](const Vector& v) { return norm(v, spec) == radius ? v + e0 : v; }, std::move(probes), false);
}

}  // namespace ultranorm
