#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fsetkit::cli {

using nlohmann::json;

namespace {

// Field access with the JSON path in every message.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key) && !(*j_)[key].is_null(); }

  Node at(const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) throw ParseError(path_ + ": missing field '" + key + "'");
    return Node(*it, path_ + "." + key);
  }
  Node at(std::size_t i) const { return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }
  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::int64_t integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }
  std::uint64_t count() const {
    const std::int64_t v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }
  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }
  // Integers may also be written as decimal strings.
  BigInt big() const {
    if (j_->is_number_integer()) return BigInt(j_->get<std::int64_t>());
    if (j_->is_string()) {
      const std::string s = j_->get<std::string>();
      const bool neg = !s.empty() && s[0] == '-';
      if (s.size() == static_cast<std::size_t>(neg) || s.find_first_not_of("0123456789", neg) != std::string::npos)
        fail("expected an integer");
      return BigInt(s);
    }
    fail("expected an integer");
  }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(path_ + ": " + why); }

 private:
  const json* j_;
  std::string path_;
};

std::int64_t get_or(const Node& n, const std::string& key, std::int64_t fallback) {
  return n.has(key) ? n.at(key).integer() : fallback;
}

struct Loader {
  Scenario sc;

  // Re-raises library errors with the JSON path attached, keeping their class.
  template <class Fn>
  auto guarded(const Node& n, Fn fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw ParseError(n.path() + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(n.path() + ": " + e.what());
    } catch (const InvalidArgument& e) {
      throw ValidationError(n.path() + ": " + e.what());
    } catch (const Mismatch& e) {
      throw ValidationError(n.path() + ": " + e.what());
    } catch (const DivisionByZero& e) {
      throw ValidationError(n.path() + ": " + e.what());
    }
  }

  CurveParams curve(const Node& n) {
    return guarded(n, [&] { return make_curve(sc.p, n.at("a4").integer(), n.at("a6").integer()); });
  }

  GroupPtr group(const Node& n) {
    std::vector<CurveParams> curves;
    if (n.has("curves")) {
      const Node cs = n.at("curves");
      for (std::size_t i = 0; i < cs.size(); ++i) curves.push_back(curve(cs.at(i)));
    }
    const std::uint64_t dim = n.has("torus_dim") ? n.at("torus_dim").count() : 0;
    return guarded(n, [&] { return make_group(sc.tower, sc.q, dim, curves); });
  }

  TowerElem element(const Node& n) {
    const std::string text = n.str();
    return guarded(n, [&] { return parse_tower(sc.tower, text); });
  }

  // Inline point of `G`, or "identity".
  ProductPoint inline_point(const Node& n, const GroupPtr& G) {
    if (n.raw().is_string() && n.str() == "identity") return ProductPoint::identity(G);
    std::vector<TowerElem> torus;
    std::vector<ECPoint> elliptic;
    if (n.has("torus")) {
      const Node t = n.at("torus");
      for (std::size_t i = 0; i < t.size(); ++i) torus.push_back(element(t.at(i)));
    }
    if (n.has("elliptic")) {
      const Node e = n.at("elliptic");
      for (std::size_t i = 0; i < e.size(); ++i) {
        const Node pt = e.at(i);
        if (i >= G->curves.size()) pt.fail("more elliptic coordinates than curves");
        if (pt.raw().is_string()) {
          if (pt.str() != "O") pt.fail("expected \"O\" or [x, y]");
          elliptic.push_back(ECPoint::infinity(G->curves[i]));
          continue;
        }
        if (pt.size() != 2) pt.fail("expected [x, y]");
        const TowerElem x = element(pt.at(0)), y = element(pt.at(1));
        elliptic.push_back(guarded(pt, [&] { return ECPoint::affine(G->curves[i], x, y); }));
      }
    }
    return guarded(n, [&] { return ProductPoint::make(G, std::move(torus), std::move(elliptic)); });
  }

  // A name from `points`, "identity", or an inline point.
  ProductPoint point(const Node& n, const GroupPtr& G) {
    if (n.raw().is_string() && n.str() != "identity") {
      const std::string name = n.str();
      auto it = sc.points.find(name);
      if (it == sc.points.end()) throw ValidationError(n.path() + ": unknown point '" + name + "'");
      if (!same_group(it->second.group(), G)) throw ValidationError(n.path() + ": point '" + name + "' is in another group");
      return it->second;
    }
    return inline_point(n, G);
  }

  Subgroup subgroup(const Node& n) {
    std::vector<ProductPoint> gens;
    for (std::size_t i = 0; i < n.size(); ++i) gens.push_back(point(n.at(i), sc.group));
    return guarded(n, [&] { return Subgroup(sc.group, std::move(gens)); });
  }

  GrouplessFSet fset(const Node& n, const GroupPtr& G) {
    const ProductPoint base = n.has("base") ? point(n.at("base"), G) : ProductPoint::identity(G);
    std::vector<OrbitTerm> terms;
    if (n.has("terms")) {
      const Node ts = n.at("terms");
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const Node t = ts.at(i);
        ProductPoint P = point(t.at("point"), G);
        if (t.has("negate") && t.at("negate").boolean()) P = -P;
        const std::int64_t stride = get_or(t, "stride", 1), offset = get_or(t, "offset", 0);
        const std::int64_t var = get_or(t, "var", static_cast<std::int64_t>(i));
        if (stride < 1 || offset < 0 || var < 0) t.fail("stride must be positive, offset and var nonnegative");
        terms.push_back(OrbitTerm{std::move(P), static_cast<std::uint64_t>(stride), static_cast<std::uint64_t>(offset),
                                  static_cast<std::size_t>(var)});
      }
    }
    return guarded(n, [&] { return GrouplessFSet::coupled(base, std::move(terms), sc.frobenius()); });
  }

  GroupHom hom(const Node& n, const GroupPtr& target) {
    IntMatrix torus;
    if (n.has("torus_matrix")) {
      const Node m = n.at("torus_matrix");
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<BigInt> row;
        for (std::size_t j = 0; j < m.at(i).size(); ++j) row.push_back(m.at(i).at(j).big());
        torus.push_back(std::move(row));
      }
    }
    EndoMatrix ell;
    if (n.has("elliptic_matrix")) {
      const Node m = n.at("elliptic_matrix");
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<EndoEntry> row;
        for (std::size_t j = 0; j < m.at(i).size(); ++j) {
          const Node e = m.at(i).at(j);
          if (e.size() != 2) e.fail("expected [u, v] for u + vF");
          row.push_back(EndoEntry{e.at(0).big(), e.at(1).big()});
        }
        ell.push_back(std::move(row));
      }
    }
    return guarded(n, [&] { return GroupHom::make(sc.group, target, std::move(torus), std::move(ell)); });
  }

  Subvariety variety(const Node& n) {
    if (n.has("full") && n.at("full").boolean()) return Subvariety::full(sc.group);
    std::vector<LaurentPoly> torus;
    if (n.has("torus")) {
      const Node t = n.at("torus");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string text = t.at(i).str();
        torus.push_back(guarded(t.at(i), [&] { return LaurentPoly::parse(sc.p, sc.group->torus_dim, text); }));
      }
    }
    std::vector<std::optional<CurveSystem>> ell(sc.group->curves.size());
    if (n.has("elliptic")) {
      const Node e = n.at("elliptic");
      if (e.size() != ell.size()) e.fail("expected one entry per elliptic factor");
      for (std::size_t i = 0; i < e.size(); ++i) {
        const Node c = e.at(i);
        if (c.raw().is_null()) continue;
        CurveSystem sys;
        const Node eqs = c.at("equations");
        for (std::size_t k = 0; k < eqs.size(); ++k) {
          const std::string text = eqs.at(k).str();
          sys.equations.push_back(guarded(eqs.at(k), [&] { return CurvePoly::parse(sc.tower, i + 1, text); }));
        }
        if (c.has("contains_infinity")) sys.contains_infinity = c.at("contains_infinity").boolean();
        ell[i] = std::move(sys);
      }
    }
    return guarded(n, [&] { return Subvariety::make(sc.group, std::move(torus), std::move(ell)); });
  }

  Certificate certificate(const Node& n) {
    Certificate cert;
    cert.bound = sc.bound;
    cert.cap = sc.cap;
    if (n.has("groupless")) {
      const Node g = n.at("groupless");
      for (std::size_t i = 0; i < g.size(); ++i) cert.claimed.groupless.push_back(fset(g.at(i), sc.group));
    }
    if (n.has("generalized")) {
      const Node g = n.at("generalized");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Node e = g.at(i);
        const GroupPtr target = group(e.at("target"));
        GroupHom pi = hom(e, target);
        GrouplessFSet S = fset(e.at("image"), target);
        Subgroup sub = subgroup(e.at("subgroup"));
        cert.claimed.generalized.push_back(
            guarded(e, [&] { return GeneralizedFSet::make(std::move(pi), std::move(S), std::move(sub)); }));
      }
    }
    if (n.has("pseudo")) {
      const Node g = n.at("pseudo");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Node e = g.at(i);
        if (!sc.gamma) e.fail("pseudo-generalized sets need gamma");
        const GroupPtr target = group(e.at("target"));
        GroupHom pi = hom(e, target);
        GrouplessFSet S = fset(e.at("image"), target);
        Subgroup sub = subgroup(e.at("subgroup"));
        CoeffVector c;
        const Node oc = e.at("offset_coeffs");
        for (std::size_t k = 0; k < oc.size(); ++k) c.push_back(oc.at(k).integer());
        cert.claimed.pseudo.push_back(guarded(e, [&] {
          return PseudoGeneralizedFSet::make(*sc.gamma, c, std::move(sub), std::move(pi), std::move(S));
        }));
      }
    }
    return cert;
  }

  RecurrenceSpec recurrence(const Node& n) {
    const std::string name = n.at("point").str();
    const ProductPoint P = point(n.at("point"), sc.group);
    const std::uint64_t factor = n.has("factor") ? n.at("factor").count() : 0;
    if (factor >= sc.group->curves.size()) n.fail("no elliptic factor " + std::to_string(factor));
    std::vector<BigInt> coeffs;
    const Node h = n.at("h");
    for (std::size_t i = 0; i < h.size(); ++i) coeffs.push_back(h.at(i).big());
    IntPoly poly = guarded(h, [&] { return IntPoly(std::move(coeffs)); });
    const std::uint64_t N = n.has("N") ? n.at("N").count() : 25;
    return RecurrenceSpec{name, factor, P.elliptic()[factor], std::move(poly), N};
  }

  void load(const Node& root) {
    const std::string schema = root.at("schema").str();
    if (schema != kScenarioSchema) {
      throw ValidationError("unsupported schema '" + schema + "' (expected " + kScenarioSchema + ")");
    }
    sc.name = root.has("name") ? root.at("name").str() : "scenario";
    const std::int64_t p = root.at("p").integer();
    if (p < 2 || p > 65521) root.at("p").fail("prime out of range");
    sc.p = static_cast<std::uint32_t>(p);
    sc.q = root.has("q") ? root.at("q").big() : BigInt(p);
    const std::string d = root.at("tower").str();
    sc.tower = guarded(root.at("tower"), [&] { return make_tower(parse_poly(sc.p, d)); });
    guarded(root, [&] { return FrobeniusOp(sc.p, sc.q); });
    sc.group = group(root.at("group"));

    if (root.has("points")) {
      const Node pts = root.at("points");
      if (!pts.raw().is_object()) pts.fail("expected an object of named points");
      for (const auto& [name, value] : pts.raw().items()) {
        sc.points.emplace(name, inline_point(Node(value, pts.path() + "." + name), sc.group));
      }
    }
    if (root.has("gamma")) sc.gamma = subgroup(root.at("gamma"));
    if (root.has("variety")) sc.variety = variety(root.at("variety"));
    if (root.has("bounds")) {
      const Node b = root.at("bounds");
      if (b.has("B")) sc.bound = b.at("B").integer();
      if (b.has("N")) sc.cap = b.at("N").count();
      if (sc.bound < 0) b.at("B").fail("negative bound");
    }
    if (root.has("certificate")) sc.certificate = certificate(root.at("certificate"));
    if (root.has("recurrence")) sc.recurrence = recurrence(root.at("recurrence"));
  }
};

}  // namespace

std::vector<CurveParams> Scenario::curves() const {
  std::vector<CurveParams> out = group->curves;
  auto add = [&](const GroupPtr& g) {
    for (const auto& c : g->curves)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  if (certificate) {
    for (const auto& T : certificate->claimed.generalized) add(T.hom().target());
    for (const auto& T : certificate->claimed.pseudo) add(T.hom().target());
  }
  return out;
}

Scenario load_scenario(const json& doc) {
  Loader l;
  l.load(Node(doc, "$"));
  return std::move(l.sc);
}

Scenario load_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return load_scenario(doc);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_text(ss.str());
}

}  // namespace fsetkit::cli
