#include "trank/io.hpp"

#include <fstream>

namespace trank {

namespace {

std::vector<Fe> fe_vector(const Json& j, std::uint64_t p, const char* what) {
  if (!j.is_array()) throw ParameterError(std::string(what) + ": expected an array");
  std::vector<Fe> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw ParameterError(std::string(what) + ": expected residues");
    const std::uint64_t x = v.get<std::uint64_t>();
    if (x >= p) throw ParameterError(std::string(what) + ": residue out of range");
    out.push_back(x);
  }
  return out;
}

std::array<std::uint64_t, 3> dims_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParameterError("dims: expected three entries");
  return {j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>(), j[2].get<std::uint64_t>()};
}

SubsetMask mask_from(const Json& j, int m) {
  std::vector<int> elems;
  for (const auto& e : j) elems.push_back(e.get<int>());
  return SubsetMask::of_elements(elems, m);
}

Json mask_to(const SubsetMask& s) { return Json(s.elements()); }

}  // namespace

Json decomposition_to_json(const Decomposition& d) {
  Json terms = Json::array();
  for (const auto& term : d.terms)
    terms.push_back(Json{{"u", term.u}, {"v", term.v}, {"w", term.w}, {"scale", term.scale}});
  return Json{{"p", d.p}, {"dims", d.dims}, {"terms", std::move(terms)}};
}

Decomposition decomposition_from_json(const Json& j) {
  Decomposition d;
  d.p = j.at("p").get<std::uint64_t>();
  FieldContext ctx(d.p);  // validates the modulus
  d.dims = dims_from(j.at("dims"));
  for (const auto& jt : j.at("terms")) {
    RankOneTerm term;
    term.u = fe_vector(jt.at("u"), d.p, "term.u");
    term.v = fe_vector(jt.at("v"), d.p, "term.v");
    term.w = fe_vector(jt.at("w"), d.p, "term.w");
    term.scale = jt.at("scale").get<std::uint64_t>();
    if (term.scale >= d.p) throw ParameterError("term.scale: residue out of range");
    if (term.u.size() != d.dims[0] || term.v.size() != d.dims[1] || term.w.size() != d.dims[2])
      throw ParameterError("decomposition term does not match dims");
    d.terms.push_back(std::move(term));
  }
  return d;
}

Json sparse_tensor_to_json(const SparseTensor& t, std::uint64_t p) {
  Json entries = Json::array();
  for (const auto& [idx, c] : t.entries) entries.push_back(Json::array({idx[0], idx[1], idx[2], c}));
  return Json{{"p", p}, {"dims", t.dims}, {"entries", std::move(entries)}};
}

SparseTensor sparse_tensor_from_json(const Json& j) {
  SparseTensor t;
  t.dims = dims_from(j.at("dims"));
  const std::uint64_t p = j.contains("p") ? j.at("p").get<std::uint64_t>() : 0;
  for (const auto& je : j.at("entries")) {
    if (!je.is_array() || je.size() != 4) throw ParameterError("tensor entry: expected [i, j, k, coeff]");
    const Index3 idx{je[0].get<std::uint64_t>(), je[1].get<std::uint64_t>(), je[2].get<std::uint64_t>()};
    for (int a = 0; a < 3; ++a)
      if (idx[a] >= t.dims[a]) throw ParameterError("tensor entry index out of range");
    const Fe c = je[3].get<std::uint64_t>();
    if (p != 0 && c >= p) throw ParameterError("tensor coefficient out of range");
    if (c != 0) t.entries[idx] = c;
  }
  return t;
}

Json tripartition_to_json(const TripartitionInstance& inst) {
  Json families = Json::array();
  for (const auto& family : inst.families) {
    Json f = Json::array();
    for (const auto& s : family) f.push_back(mask_to(s));
    families.push_back(std::move(f));
  }
  return Json{{"n", inst.n}, {"families", std::move(families)}};
}

TripartitionInstance tripartition_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const auto& jf = j.at("families");
  if (!jf.is_array() || jf.size() != 3) throw ParameterError("tripartition: expected three families");
  std::array<std::vector<SubsetMask>, 3> families;
  for (int i = 0; i < 3; ++i)
    for (const auto& js : jf[static_cast<std::size_t>(i)]) families[i].push_back(mask_from(js, 3 * n));
  return TripartitionInstance::make(n, std::move(families));
}

Json setcover_to_json(const SetCoverInstance& inst) {
  Json sets = Json::array();
  for (const auto& s : inst.sets) sets.push_back(mask_to(s));
  return Json{{"n", inst.n}, {"t", inst.t}, {"s", inst.s}, {"sets", std::move(sets)}};
}

SetCoverInstance setcover_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const int t = j.at("t").get<int>();
  const int s = j.at("s").get<int>();
  std::vector<SubsetMask> sets;
  for (const auto& js : j.at("sets")) sets.push_back(mask_from(js, n));
  return SetCoverInstance::make(n, t, s, std::move(sets));
}

Json rank_bounds_to_json(const RankBounds& b) {
  const auto rational = [](const Rational& q) {
    return Json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
  };
  Json j{{"k", b.k},
         {"lower_threshold", rational(b.lower_threshold)},
         {"lower_threshold_weak", rational(b.lower_threshold_weak)},
         {"upper_bound", rational(b.upper_bound)}};
  if (b.candidate_rank) {
    j["candidate_rank"] = b.candidate_rank->str();
    j["candidate_below_threshold"] = b.candidate_below_threshold;
  }
  return j;
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParameterError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace trank
