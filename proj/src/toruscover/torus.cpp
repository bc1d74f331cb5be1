#include "metacover/torus.hpp"

#include <algorithm>
#include <set>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

void require_square(const IntMatrix& mat, std::size_t n, const char* name) {
  if (mat.size() != n) throw PreconditionError(std::string(name) + " must have " + std::to_string(n) + " rows");
  for (const auto& row : mat) {
    if (row.size() != n) throw PreconditionError(std::string(name) + " must be square");
  }
}

// Extends the subgroup (membership flags + element list) by x.
void adjoin(const FiniteTorus& torus, std::vector<char>& member, std::vector<FiniteTorus::Element>& elems,
            FiniteTorus::Element x) {
  if (member[x]) return;
  const std::vector<FiniteTorus::Element> base = elems;
  FiniteTorus::Element y = x;
  while (!member[y]) {
    for (auto h : base) {
      const auto z = torus.add(h, y);
      member[z] = 1;
      elems.push_back(z);
    }
    y = torus.add(y, x);
  }
}

}  // namespace

TorusSpec TorusSpec::local_mode(const LocalModel& model, std::size_t n, IntMatrix M) {
  TorusSpec s;
  s.mode = TorusMode::Local;
  s.n = n;
  s.m = model.m();
  s.local = model;
  s.M = std::move(M);
  return s;
}

TorusSpec TorusSpec::lattice_mode(std::size_t n, std::int64_t m, IntMatrix J, std::int64_t level) {
  TorusSpec s;
  s.mode = TorusMode::Lattice;
  s.n = n;
  s.m = m;
  s.J = std::move(J);
  s.level = level;
  return s;
}

std::vector<std::int64_t> FiniteTorus::decode(Element x) const {
  std::vector<std::int64_t> c(coords_);
  for (std::size_t k = 0; k < coords_; ++k) {
    c[k] = static_cast<std::int64_t>(x % static_cast<Element>(modulus_));
    x /= static_cast<Element>(modulus_);
  }
  return c;
}

FiniteTorus::Element FiniteTorus::encode(const std::vector<std::int64_t>& c) const {
  if (c.size() != coords_) throw DimensionError("torus element has wrong number of coordinates");
  std::size_t code = 0;
  for (std::size_t k = coords_; k-- > 0;) code = code * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(mod(c[k], modulus_));
  return static_cast<Element>(code);
}

FiniteTorus::Element FiniteTorus::add(Element a, Element b) const {
  const auto mm = static_cast<Element>(modulus_);
  Element out = 0;
  Element place = 1;
  for (std::size_t k = 0; k < coords_; ++k) {
    out += ((a % mm + b % mm) % mm) * place;
    a /= mm;
    b /= mm;
    place *= mm;
  }
  return out;
}

FiniteTorus::Element FiniteTorus::neg(Element a) const { return mul_scalar(a, -1); }

FiniteTorus::Element FiniteTorus::mul_scalar(Element a, std::int64_t k) const {
  auto c = decode(a);
  for (auto& x : c) x = mod(x * k, modulus_);
  return encode(c);
}

std::int64_t FiniteTorus::pairing_exponent(Element a, Element b) const {
  const auto ca = decode(a);
  const auto cb = decode(b);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < coords_; ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < coords_; ++j) acc += ca[i] * pairing_[i][j] % spec_.m * cb[j];
  }
  return mod(acc, spec_.m);
}

bool FiniteTorus::is_torsion(Element a) const {
  if (spec_.mode == TorusMode::Lattice) return a == 0;
  const auto c = decode(a);
  for (std::size_t i = 0; i < spec_.n; ++i) {
    if (c[2 * i] != 0) return false;
  }
  return true;
}

std::string FiniteTorus::format(Element a) const {
  const auto c = decode(a);
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s += (spec_.mode == TorusMode::Local && k % 2 == 0) ? ";" : ",";
    s += std::to_string(c[k]);
  }
  return s + ")";
}

FiniteTorus build_finite_model(const TorusSpec& spec) {
  if (spec.n == 0) throw PreconditionError("rank n must be positive");
  if (spec.m < 1) throw PreconditionError("m must be positive");
  FiniteTorus t;
  t.spec_ = spec;
  const std::int64_t m = spec.m;
  if (spec.mode == TorusMode::Local) {
    if (!spec.local) throw PreconditionError("local mode requires a local model");
    if (spec.local->m() != m) throw PreconditionError("local model and torus disagree on m");
    require_square(spec.M, spec.n, "M");
    t.coords_ = 2 * spec.n;
    t.modulus_ = m;
    const std::int64_t h = mod(spec.local->minus_one_log(), m);
    const std::int64_t E[2][2] = {{h, mod(-1, m)}, {1 % m, 0}};
    t.pairing_.assign(t.coords_, std::vector<std::int64_t>(t.coords_, 0));
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (std::size_t j = 0; j < spec.n; ++j) {
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            t.pairing_[2 * i + a][2 * j + b] = mod(spec.M[i][j] * E[a][b], m);
          }
        }
      }
    }
  } else {
    require_square(spec.J, spec.n, "J");
    const std::int64_t level = spec.level == 0 ? m : spec.level;
    if (level < 1 || level % m != 0) throw PreconditionError("level must be a positive multiple of m");
    t.spec_.level = level;
    t.coords_ = spec.n;
    t.modulus_ = level;
    t.pairing_.assign(spec.n, std::vector<std::int64_t>(spec.n, 0));
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (std::size_t j = 0; j < spec.n; ++j) t.pairing_[i][j] = mod(spec.J[i][j], m);
    }
  }
  double size = 1;
  for (std::size_t k = 0; k < t.coords_; ++k) size *= static_cast<double>(t.modulus_);
  if (size > double(std::size_t{1} << 24)) throw BoundExceeded("finite model larger than 2^24 elements");
  t.order_ = 1;
  t.stride_.clear();
  for (std::size_t k = 0; k < t.coords_; ++k) {
    t.stride_.push_back(t.order_);
    t.order_ *= static_cast<std::size_t>(t.modulus_);
  }
  // The pairing must vanish on the kernel of the reduction: modulus * e_k pairs trivially.
  for (std::size_t k = 0; k < t.coords_; ++k) {
    for (std::size_t l = 0; l < t.coords_; ++l) {
      if (mod(t.modulus_ * t.pairing_[k][l], m) != 0) throw Error("pairing does not descend to the finite model");
    }
  }
  // Alternating on a basis: [e_k, e_k] = 1 and [e_k, e_l][e_l, e_k] = 1.
  for (std::size_t k = 0; k < t.coords_; ++k) {
    for (std::size_t l = k; l < t.coords_; ++l) {
      const std::int64_t v = k == l ? t.pairing_[k][k] : mod(t.pairing_[k][l] + t.pairing_[l][k], m);
      if (v == 0) continue;
      std::vector<std::int64_t> c(t.coords_, 0);
      c[k] = 1;
      c[l] = 1;
      const auto bad = t.encode(c);
      throw PreconditionError("pairing is not alternating: [t,t] = " + MuElement(t.pairing_exponent(bad, bad), m).to_string() +
                              " for t = " + t.format(bad));
    }
  }
  return t;
}

bool SubgroupDesc::contains(FiniteTorus::Element x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

SubgroupDesc span(const FiniteTorus& torus, const std::vector<FiniteTorus::Element>& gens) {
  std::vector<char> member(torus.order(), 0);
  std::vector<FiniteTorus::Element> elems{0};
  member[0] = 1;
  for (auto g : gens) adjoin(torus, member, elems, g);
  std::sort(elems.begin(), elems.end());
  SubgroupDesc out;
  out.elements = elems;
  out.order = elems.size();
  // Canonical generators: greedy in increasing encoding.
  std::vector<char> sub(torus.order(), 0);
  std::vector<FiniteTorus::Element> cur{0};
  sub[0] = 1;
  for (auto x : elems) {
    if (sub[x]) continue;
    out.generators.push_back(x);
    adjoin(torus, sub, cur, x);
  }
  return out;
}

MuElement commutator_pairing(const FiniteTorus& torus, FiniteTorus::Element t, FiniteTorus::Element u) {
  return MuElement(torus.pairing_exponent(t, u), torus.m());
}

SubgroupDesc compute_center(const FiniteTorus& torus) {
  std::vector<FiniteTorus::Element> radical;
  for (FiniteTorus::Element x = 0; x < torus.order(); ++x) {
    bool central = true;
    for (std::size_t k = 0; k < torus.coordinates() && central; ++k) {
      central = torus.pairing_exponent(x, torus.basis(k)) == 0;
    }
    if (central) radical.push_back(x);
  }
  SubgroupDesc z = span(torus, radical);
  z.contains_center = true;
  if (z.order != radical.size()) throw Error("radical of the pairing is not a subgroup");
  return z;
}

SymplecticReport check_symplectic(const FiniteTorus& torus) {
  SymplecticReport r;
  r.alternating = true;
  for (FiniteTorus::Element x = 0; x < torus.order() && r.alternating; ++x) {
    r.alternating = torus.pairing_exponent(x, x) == 0;
  }
  const SubgroupDesc z = compute_center(torus);
  r.index = torus.order() / z.order;
  // On T/Z: x pairs trivially with everything only if x lies in Z.
  r.nondegenerate = true;
  for (FiniteTorus::Element x = 0; x < torus.order() && r.nondegenerate; ++x) {
    if (z.contains(x)) continue;
    bool trivial = true;
    for (FiniteTorus::Element y = 0; y < torus.order() && trivial; ++y) trivial = torus.pairing_exponent(x, y) == 0;
    if (trivial) r.nondegenerate = false;
  }
  std::size_t s = 0;
  while ((s + 1) * (s + 1) <= r.index) ++s;
  r.index_is_square = s * s == r.index;
  return r;
}

bool is_isotropic(const FiniteTorus& torus, const SubgroupDesc& a) {
  for (auto x : a.generators) {
    for (auto y : a.generators) {
      if (torus.pairing_exponent(x, y) != 0) return false;
    }
  }
  return true;
}

void require_maximal_isotropic(const FiniteTorus& torus, const SubgroupDesc& a) {
  const SubgroupDesc z = compute_center(torus);
  for (auto x : z.elements) {
    if (!a.contains(x)) throw PreconditionError("subgroup does not contain the center");
  }
  if (!is_isotropic(torus, a)) throw PreconditionError("subgroup is not isotropic");
  const std::size_t q = a.order / z.order;
  if (q * q != torus.order() / z.order) throw PreconditionError("isotropic subgroup is not maximal");
}

std::vector<SubgroupDesc> enumerate_maximal_isotropics(const FiniteTorus& torus) {
  const SubgroupDesc z = compute_center(torus);
  const std::size_t index = torus.order() / z.order;
  if (index > kIsotropicIndexBound) {
    throw BoundExceeded("[T:Z] = " + std::to_string(index) + " exceeds the enumeration bound 2^12");
  }
  std::size_t target = 0;
  while (target * target < index) ++target;
  if (target * target != index) throw Error("[T:Z] is not a perfect square");
  const std::size_t max_order = z.order * target;
  const std::size_t visit_limit = std::size_t{1} << 20;

  std::set<std::vector<FiniteTorus::Element>> seen{z.elements};
  std::vector<std::vector<FiniteTorus::Element>> frontier{z.elements};
  std::vector<SubgroupDesc> out;
  if (z.order == max_order) {
    SubgroupDesc a = span(torus, z.elements);
    a.contains_center = true;
    out.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<FiniteTorus::Element>> next;
    for (const auto& h : frontier) {
      SubgroupDesc hd = span(torus, h);
      std::vector<char> member(torus.order(), 0);
      for (auto x : h) member[x] = 1;
      for (FiniteTorus::Element x = 0; x < torus.order(); ++x) {
        if (member[x]) continue;
        bool perp = true;
        for (auto g : hd.generators) {
          if (torus.pairing_exponent(x, g) != 0) {
            perp = false;
            break;
          }
        }
        if (!perp) continue;
        // Only the smallest representative of each coset x + H.
        bool smallest = true;
        for (auto y : h) {
          if (torus.add(x, y) < x) {
            smallest = false;
            break;
          }
        }
        if (!smallest) continue;
        std::vector<FiniteTorus::Element> gens = hd.generators;
        gens.push_back(x);
        SubgroupDesc bigger = span(torus, gens);
        if (!seen.insert(bigger.elements).second) continue;
        if (seen.size() > visit_limit) throw BoundExceeded("too many isotropic subgroups to enumerate");
        if (bigger.order == max_order) {
          bigger.contains_center = true;
          out.push_back(std::move(bigger));
        } else {
          next.push_back(bigger.elements);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupDesc& a, const SubgroupDesc& b) { return a.generators < b.generators; });
  return out;
}

SubgroupDesc torsion_part(const FiniteTorus& torus, const SubgroupDesc& a) {
  std::vector<FiniteTorus::Element> tors;
  for (auto x : a.elements) {
    if (torus.is_torsion(x)) tors.push_back(x);
  }
  return span(torus, tors);
}

bool is_tame(const FiniteTorus& torus, const SubgroupDesc& a) {
  require_maximal_isotropic(torus, a);
  const SubgroupDesc z = compute_center(torus);
  std::vector<FiniteTorus::Element> gens = z.generators;
  for (auto x : torsion_part(torus, a).generators) gens.push_back(x);
  return span(torus, gens).order == a.order;
}

SubgroupDesc canonical_tame_subgroup(const FiniteTorus& torus) {
  if (torus.mode() != TorusMode::Local) throw PreconditionError("no canonical tame subgroup in lattice mode");
  const SubgroupDesc z = compute_center(torus);
  std::vector<FiniteTorus::Element> gens = z.generators;
  for (std::size_t i = 0; i < torus.spec().n; ++i) gens.push_back(torus.basis(2 * i + 1));
  SubgroupDesc a = span(torus, gens);
  a.contains_center = true;
  require_maximal_isotropic(torus, a);
  if (!is_tame(torus, a)) throw Error("canonical subgroup failed the tameness check");
  return a;
}

}  // namespace metacover
