#include "ast/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ast {
namespace {

using json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json spec_json(const group_spec& g) {
  const field_tower& f = *g.t;
  json j;
  j["p"] = f.p();
  j["alpha"] = f.alpha();
  j["omega"] = f.omega();
  j["k"] = g.k;
  j["variant"] = variant_name(g.var);
  j["n"] = f.n();
  j["q"] = f.q();
  j["h_order"] = g.gal.order;
  j["omega_size"] = g.space.size;
  j["polynomial"] = f.polynomial();
  j["polynomial_str"] = polynomial_str(f);
  return j;
}

json relations_json(const group_spec& g, const triple_partition& tp,
                    const name_table& nt) {
  std::vector<valencies> val = reference_valencies(tp);
  json arr = json::array();
  for (uint32_t c = 0; c < tp.class_count; ++c) {
    const relation_name& nm = nt.of_class[c];
    json r;
    r["id"] = c;
    r["name"] = nm.str();
    if (nm.family == relation_name::kind::type1 ||
        nm.family == relation_name::kind::type2)
      r["element"] = {{"enc", nm.value}, {"poly", element_str(*g.t, nm.value)}};
    r["size"] = tp.class_sizes[c];
    r["valencies"] = {{"n1", val[c].n1}, {"n2", val[c].n2}, {"n3", val[c].n3}};
    arr.push_back(std::move(r));
  }
  return arr;
}

json intersection_json(const std::vector<intersection_entry>* entries) {
  json arr = json::array();
  if (entries)
    for (const auto& e : *entries)
      arr.push_back(
          {{"i", e.i}, {"j", e.j}, {"k", e.k}, {"l", e.l}, {"p", e.p}});
  return arr;
}

json crosscheck_json(const crosscheck_report* rep) {
  json arr = json::array();
  if (rep)
    for (const auto& line : rep->lines)
      arr.push_back({{"quantity", line.quantity},
                     {"predicted", line.predicted},
                     {"actual", line.actual},
                     {"match", line.match},
                     {"source", line.source}});
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string spec_line(const group_spec& g) {
  const field_tower& f = *g.t;
  std::ostringstream os;
  os << "spec p=" << f.p() << " alpha=" << f.alpha() << " omega=" << f.omega()
     << " k=" << g.k << " variant=" << variant_name(g.var) << " n=" << f.n()
     << " q=" << f.q() << " |H|=" << g.gal.order << " N=" << g.space.size
     << " poly=" << polynomial_str(f);
  return os.str();
}

}  // namespace

out_format format_from_name(const std::string& s) {
  if (s == "json") return out_format::json;
  if (s == "csv") return out_format::csv;
  if (s == "text") return out_format::text;
  throw std::invalid_argument("unknown format: " + s);
}

std::string element_str(const field_tower& f, uint32_t code) {
  if (f.alpha() == 1 || code == 0) return std::to_string(code);
  std::string out;
  for (int d = static_cast<int>(f.alpha()) - 1; d >= 0; --d) {
    uint32_t coeff = code;
    for (int i = 0; i < d; ++i) coeff /= f.p();
    coeff %= f.p();
    if (coeff == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeff != 1 || d == 0) out += std::to_string(coeff);
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

std::string polynomial_str(const field_tower& f) {
  const std::vector<uint32_t>& poly = f.polynomial();
  std::string out;
  for (int d = static_cast<int>(poly.size()) - 1; d >= 0; --d) {
    uint32_t coeff = poly[d];
    if (coeff == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeff != 1 || d == 0) out += std::to_string(coeff);
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

std::string render_scheme(const group_spec& g, const triple_partition& tp,
                          const name_table& nt,
                          const std::vector<intersection_entry>* intersection,
                          const crosscheck_report* crosscheck, out_format f) {
  std::vector<valencies> val = reference_valencies(tp);
  if (f == out_format::json) {
    json doc;
    doc["schema_version"] = 1;
    doc["spec"] = spec_json(g);
    doc["relations"] = relations_json(g, tp, nt);
    doc["intersection"] = intersection_json(intersection);
    doc["crosscheck"] = crosscheck_json(crosscheck);
    return dump(doc);
  }
  std::ostringstream os;
  if (f == out_format::csv) {
    os << "id,name,element,size,n1,n2,n3\n";
    for (uint32_t c = 0; c < tp.class_count; ++c) {
      const relation_name& nm = nt.of_class[c];
      bool elem = nm.family == relation_name::kind::type1 ||
                  nm.family == relation_name::kind::type2;
      os << c << ',' << csv_field(nm.str()) << ','
         << (elem ? csv_field(element_str(*g.t, nm.value)) : std::string())
         << ',' << tp.class_sizes[c] << ',' << val[c].n1 << ',' << val[c].n2
         << ',' << val[c].n3 << '\n';
    }
    if (intersection) {
      os << "\ni,j,k,l,p\n";
      for (const auto& e : *intersection)
        os << e.i << ',' << e.j << ',' << e.k << ',' << e.l << ',' << e.p
           << '\n';
    }
    if (crosscheck) {
      os << "\nquantity,predicted,actual,match,source\n";
      for (const auto& line : crosscheck->lines)
        os << csv_field(line.quantity) << ',' << csv_field(line.predicted)
           << ',' << csv_field(line.actual) << ','
           << (line.match ? "true" : "false") << ',' << csv_field(line.source)
           << '\n';
    }
    return os.str();
  }

  os << spec_line(g) << "\n\n";
  os << std::left << std::setw(4) << "id" << std::setw(10) << "name"
     << std::setw(16) << "element" << std::right << std::setw(12) << "size"
     << std::setw(8) << "n1" << std::setw(8) << "n2" << std::setw(8) << "n3"
     << '\n';
  for (uint32_t c = 0; c < tp.class_count; ++c) {
    const relation_name& nm = nt.of_class[c];
    bool elem = nm.family == relation_name::kind::type1 ||
                nm.family == relation_name::kind::type2;
    os << std::left << std::setw(4) << c << std::setw(10) << nm.str()
       << std::setw(16) << (elem ? element_str(*g.t, nm.value) : "-")
       << std::right << std::setw(12) << tp.class_sizes[c] << std::setw(8)
       << val[c].n1 << std::setw(8) << val[c].n2 << std::setw(8) << val[c].n3
       << '\n';
  }
  if (intersection) {
    os << "\nintersection numbers (i j k l p):\n";
    for (const auto& e : *intersection)
      os << "  " << e.i << ' ' << e.j << ' ' << e.k << ' ' << e.l << ' ' << e.p
         << '\n';
  }
  if (crosscheck) {
    os << "\ncrosscheck:\n";
    for (const auto& line : crosscheck->lines)
      os << "  [" << (line.match ? "ok" : "MISMATCH") << "] " << line.quantity
         << ": predicted=" << line.predicted << " actual=" << line.actual
         << " (" << line.source << ")\n";
    os << (crosscheck->clean ? "clean\n" : "MISMATCH FOUND\n");
  }
  return os.str();
}

std::string render_verify(const group_spec& g, const verify_summary& vs,
                          out_format f) {
  const char* mode = vs.mode == regularity_mode::full ? "full" : "sampled";
  if (f == out_format::json) {
    json doc;
    doc["schema_version"] = 1;
    doc["spec"] = spec_json(g);
    json v;
    v["valency"]["pass"] = vs.valency.pass;
    if (vs.valency.has_witness)
      v["valency"]["witness"] = {{"x", vs.valency.witness_x},
                                 {"y", vs.valency.witness_y},
                                 {"direction", vs.valency.witness_direction},
                                 {"class", vs.valency.witness_class},
                                 {"expected", vs.valency.expected},
                                 {"got", vs.valency.got}};
    v["regularity"]["pass"] = vs.regularity.pass;
    v["regularity"]["mode"] = mode;
    v["regularity"]["checked_triples"] = vs.regularity.checked_triples;
    if (vs.regularity.has_witness)
      v["regularity"]["witness"] = {{"triple", vs.regularity.witness_triple},
                                    {"i", vs.regularity.witness_i},
                                    {"j", vs.regularity.witness_j},
                                    {"k", vs.regularity.witness_k},
                                    {"expected", vs.regularity.expected},
                                    {"got", vs.regularity.got}};
    v["s3"]["pass"] = vs.s3.pass;
    if (vs.s3.has_witness)
      v["s3"]["witness"] = {{"perm", vs.s3.witness_perm},
                            {"triple", vs.s3.witness_triple}};
    v["trivial"]["pass"] = vs.trivial.pass;
    if (vs.trivial.has_witness)
      v["trivial"]["witness"] = {{"triple", vs.trivial.witness_triple}};
    if (vs.oracle_checked) v["oracle"]["equal"] = vs.oracle_equal;
    v["all_pass"] = vs.all_pass();
    doc["verify"] = std::move(v);
    return dump(doc);
  }

  std::ostringstream os;
  auto wit = [](std::initializer_list<std::pair<const char*, uint64_t>> kv) {
    std::string s;
    for (const auto& [key, value] : kv) {
      if (!s.empty()) s += ";";
      s += std::string(key) + "=" + std::to_string(value);
    }
    return s;
  };
  std::string wv, wr, ws, wt;
  if (vs.valency.has_witness)
    wv = wit({{"x", vs.valency.witness_x},
              {"y", vs.valency.witness_y},
              {"direction", static_cast<uint64_t>(vs.valency.witness_direction)},
              {"class", vs.valency.witness_class},
              {"expected", vs.valency.expected},
              {"got", vs.valency.got}});
  if (vs.regularity.has_witness)
    wr = wit({{"triple", vs.regularity.witness_triple},
              {"i", vs.regularity.witness_i},
              {"j", vs.regularity.witness_j},
              {"k", vs.regularity.witness_k},
              {"expected", vs.regularity.expected},
              {"got", vs.regularity.got}});
  if (vs.s3.has_witness)
    ws = wit({{"perm", static_cast<uint64_t>(vs.s3.witness_perm)},
              {"triple", vs.s3.witness_triple}});
  if (vs.trivial.has_witness) wt = wit({{"triple", vs.trivial.witness_triple}});

  if (f == out_format::csv) {
    os << "condition,pass,witness\n";
    os << "valency," << (vs.valency.pass ? "true" : "false") << ','
       << csv_field(wv) << '\n';
    os << "regularity(" << mode << "),"
       << (vs.regularity.pass ? "true" : "false") << ',' << csv_field(wr)
       << '\n';
    os << "s3," << (vs.s3.pass ? "true" : "false") << ',' << csv_field(ws)
       << '\n';
    os << "trivial," << (vs.trivial.pass ? "true" : "false") << ','
       << csv_field(wt) << '\n';
    if (vs.oracle_checked)
      os << "oracle," << (vs.oracle_equal ? "true" : "false") << ",\n";
    return os.str();
  }

  os << spec_line(g) << '\n';
  os << "valency: " << (vs.valency.pass ? "pass" : "FAIL " + wv) << '\n';
  os << "regularity(" << mode << "): "
     << (vs.regularity.pass ? "pass" : "FAIL " + wr) << " (checked "
     << vs.regularity.checked_triples << " triples)" << '\n';
  os << "s3: " << (vs.s3.pass ? "pass" : "FAIL " + ws) << '\n';
  os << "trivial: " << (vs.trivial.pass ? "pass" : "FAIL " + wt) << '\n';
  if (vs.oracle_checked)
    os << "oracle: " << (vs.oracle_equal ? "equal" : "FAIL not equal") << '\n';
  os << (vs.all_pass() ? "all conditions pass\n" : "VERIFICATION FAILED\n");
  return os.str();
}

std::string render_compare(const group_spec& a, const group_spec& b,
                           const compare_result& r, out_format f) {
  if (f == out_format::json) {
    json doc;
    doc["schema_version"] = 1;
    doc["a"] = spec_json(a);
    doc["b"] = spec_json(b);
    doc["verdict"] = verdict_name(r.verdict);
    doc["witness_a"] = r.witness_a;
    doc["witness_b"] = r.witness_b;
    return dump(doc);
  }
  std::ostringstream os;
  if (f == out_format::csv) {
    os << "verdict,witness_a,witness_b\n";
    os << verdict_name(r.verdict) << ',' << r.witness_a << ',' << r.witness_b
       << '\n';
    return os.str();
  }
  os << "a: " << spec_line(a) << '\n';
  os << "b: " << spec_line(b) << '\n';
  os << "verdict: " << verdict_name(r.verdict) << '\n';
  if (r.witness_a >= 0)
    os << "witness_a (a-class split across b-classes at triple) = "
       << r.witness_a << '\n';
  if (r.witness_b >= 0)
    os << "witness_b (b-class split across a-classes at triple) = "
       << r.witness_b << '\n';
  return os.str();
}

}  // namespace ast
