#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fm_transform.hpp"
#include "report.hpp"

namespace spinforms {

/// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Mode { exact, floating };

inline const char *to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw InputError("unknown mode: " + std::string(s));
}

template <FieldScalar S> constexpr Mode mode_of() { return is_exact_v<S> ? Mode::exact : Mode::floating; }

namespace io_detail {

using nlohmann::json;

/// Coefficients: strings "p/q" mean exact, JSON numbers mean float.
struct ModeVote {
  bool exact = false;
  bool floating = false;

  void coefficient(const json &v) {
    if (v.is_string()) exact = true;
    else if (v.is_number()) floating = true;
    else throw InputError("coefficient must be a rational string or a number");
  }
  /// Domain bounds: integers are neutral, strings exact, other numbers float.
  void bound(const json &v) {
    if (v.is_string()) exact = true;
    else if (v.is_number_float()) floating = true;
    else if (!v.is_number_integer()) throw InputError("domain bound must be a rational string or a number");
  }
  [[nodiscard]] Mode result() const {
    if (exact && floating) throw InputError("file mixes rational strings and numeric coefficients");
    return floating ? Mode::floating : Mode::exact;
  }
};

template <FieldScalar S> S scalar_from(const json &v) {
  if constexpr (is_exact_v<S>) {
    if (v.is_string()) {
      try {
        return parse_rational(v.get<std::string>());
      } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
      }
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw InputError("exact mode needs rational strings");
  } else {
    if (v.is_number()) return v.get<double>();
    throw InputError("float mode needs numeric coefficients");
  }
}

template <FieldScalar S> json scalar_to(const S &v) {
  if constexpr (is_exact_v<S>) return v.get_str();
  else return v;
}

} // namespace io_detail

inline nlohmann::json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(path + ": " + e.what());
  }
}

// ---- forms ----

inline Mode form_file_mode(const nlohmann::json &j) {
  io_detail::ModeVote vote;
  if (!j.contains("terms") || !j["terms"].is_array()) throw InputError("form: missing \"terms\" array");
  for (const auto &t : j["terms"]) {
    if (!t.contains("coef")) throw InputError("form: term without \"coef\"");
    vote.coefficient(t["coef"]);
  }
  return vote.result();
}

template <FieldScalar S> Form<S> form_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("grade"))
    throw InputError("form: expected an object with \"dim\", \"grade\" and \"terms\"");
  if (form_file_mode(j) != mode_of<S>()) throw InputError("form: file mode does not match the requested mode");
  const int dim = j["dim"].get<int>();
  const int grade = j["grade"].get<int>();
  if (dim < 4 || dim > kMaxDim) throw InputError("form: dim must be between 4 and 8");
  if (grade < 0 || grade > dim) throw InputError("form: grade out of range");
  Form<S> f(dim, grade);
  for (const auto &t : j["terms"]) {
    if (!t.contains("indices") || !t["indices"].is_array()) throw InputError("form: term without \"indices\"");
    std::vector<int> idx = t["indices"].get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != grade) throw InputError("form: term has the wrong number of indices");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < label_base(dim) || idx[i] >= label_base(dim) + dim) throw InputError("form: index out of range");
      if (i > 0 && idx[i] <= idx[i - 1]) throw InputError("form: indices must be strictly increasing");
    }
    f += Form<S>::basis(dim, idx, io_detail::scalar_from<S>(t["coef"]));
  }
  return f;
}

template <FieldScalar S> nlohmann::json form_to_json(const Form<S> &f) {
  nlohmann::json terms = nlohmann::json::array();
  const auto &t = f.table();
  for (int r = 0; r < f.size(); ++r) {
    if (is_zero(f[r])) continue;
    std::vector<int> idx;
    for (int p : mask_positions(t.mask(r))) idx.push_back(p + label_base(f.dim()));
    terms.push_back({{"indices", idx}, {"coef", io_detail::scalar_to(f[r])}});
  }
  return {{"dim", f.dim()}, {"grade", f.grade()}, {"terms", terms}};
}

// ---- sections ----

/// Component names: f followed by the fiber label, A followed by the base label.
inline std::string fiber_key(const Layout &L, int a) {
  return "f" + std::to_string(L.fiber[a] + label_base(L.dim));
}
inline std::string base_key(const Layout &L, int j) {
  return "A" + std::to_string(L.base[j] + label_base(L.dim));
}

inline Mode section_file_mode(const nlohmann::json &j) {
  io_detail::ModeVote vote;
  for (const char *group : {"f", "A"}) {
    if (!j.contains(group)) continue;
    for (const auto &[k, terms] : j[group].items()) {
      if (!terms.is_array()) throw InputError(std::string("section: ") + group + "." + k + " must be a list");
      for (const auto &term : terms) {
        if (!term.is_array() || term.size() != 2) throw InputError("section: terms are [coef, exponents]");
        vote.coefficient(term[0]);
      }
    }
  }
  if (j.contains("domain"))
    for (const char *side : {"min", "max"})
      if (j["domain"].contains(side))
        for (const auto &b : j["domain"][side]) vote.bound(b);
  return vote.result();
}

template <FieldScalar S> GraphSection<S> section_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("case")) throw InputError("section: missing \"case\"");
  auto kind = parse_case(j["case"].get<std::string>());
  if (!kind) throw InputError("section: unknown case " + j["case"].dump());
  if (section_file_mode(j) != mode_of<S>()) throw InputError("section: file mode does not match the requested mode");
  GraphSection<S> s = GraphSection<S>::zero(*kind);
  const Layout L = s.layout();

  auto read_group = [&](const char *group, int count, auto key_of, std::vector<Polynomial<S>> &dst) {
    if (!j.contains(group)) return;
    if (!j[group].is_object()) throw InputError(std::string("section: \"") + group + "\" must be an object");
    std::vector<std::string> known;
    for (int i = 0; i < count; ++i) known.push_back(key_of(L, i));
    for (const auto &[k, terms] : j[group].items()) {
      auto it = std::find(known.begin(), known.end(), k);
      if (it == known.end()) throw InputError("section: unknown component " + k);
      Polynomial<S> p;
      for (const auto &term : terms) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_array())
          throw InputError("section: terms are [coef, exponents]");
        std::vector<int> e = term[1].template get<std::vector<int>>();
        if (static_cast<int>(e.size()) != L.base_dim)
          throw InputError("section: exponent tuple length must equal the base dimension");
        for (int x : e)
          if (x < 0) throw InputError("section: negative exponent");
        p += Polynomial<S>::monomial(io_detail::scalar_from<S>(term[0]), e);
      }
      dst[it - known.begin()] = p;
    }
  };
  read_group("f", L.fiber_dim, fiber_key, s.f);
  read_group("A", L.base_dim, base_key, s.A);

  if (j.contains("domain")) {
    const auto &d = j["domain"];
    for (const char *side : {"min", "max"}) {
      if (!d.contains(side) || !d[side].is_array() || static_cast<int>(d[side].size()) != L.base_dim)
        throw InputError(std::string("section: domain.") + side + " must list one bound per base axis");
    }
    for (int i = 0; i < L.base_dim; ++i) {
      s.domain.min[i] = io_detail::scalar_from<S>(d["min"][i]);
      s.domain.max[i] = io_detail::scalar_from<S>(d["max"][i]);
    }
  }
  if (j.contains("grid")) s.grid = j["grid"].get<int>();
  try {
    s.validate();
  } catch (const ContractViolation &e) {
    throw InputError(e.what());
  }
  return s;
}

template <FieldScalar S> nlohmann::json section_to_json(const GraphSection<S> &s) {
  const Layout L = s.layout();
  nlohmann::json j;
  j["case"] = to_string(s.kind);
  auto group = [&](const std::vector<Polynomial<S>> &ps, auto key_of) {
    nlohmann::json g = nlohmann::json::object();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].is_zero()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto &[e, c] : ps[i].terms())
        terms.push_back({io_detail::scalar_to(c), std::vector<int>(e.begin(), e.begin() + L.base_dim)});
      g[key_of(L, static_cast<int>(i))] = terms;
    }
    return g;
  };
  j["f"] = group(s.f, fiber_key);
  j["A"] = group(s.A, base_key);
  nlohmann::json mn = nlohmann::json::array(), mx = nlohmann::json::array();
  for (int i = 0; i < L.base_dim; ++i) {
    mn.push_back(io_detail::scalar_to(s.domain.min[i]));
    mx.push_back(io_detail::scalar_to(s.domain.max[i]));
  }
  j["domain"] = {{"min", mn}, {"max", mx}};
  j["grid"] = s.grid;
  return j;
}

// ---- reports ----

inline nlohmann::json report_to_json(const ResidualReport &r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto &e : r.entries)
    entries.push_back({{"name", e.name},
                       {"anchor", e.anchor},
                       {"quote", e.quote},
                       {"value", e.value},
                       {"tolerance", e.tolerance},
                       {"pass", e.pass},
                       {"note", e.note}});
  return {{"title", r.title}, {"passed", r.passed()}, {"entries", entries}};
}

} // namespace spinforms
