#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ast/action.hpp"
#include "ast/closedform.hpp"
#include "ast/verify.hpp"

namespace ast {

enum class out_format { json, csv, text };

// Accepts "json", "csv", "text"; throws std::invalid_argument otherwise.
out_format format_from_name(const std::string& s);

// Pretty printers: a field element as its base-p digit polynomial in x
// ("0", "1", "x", "x^2 + x + 1", plain digits when alpha == 1), and the
// modulus polynomial of the tower.
std::string element_str(const field_tower& f, uint32_t code);
std::string polynomial_str(const field_tower& f);

// Everything below renders complete documents, newline-terminated.  The JSON
// documents follow the fixed schema
//   {schema_version, spec:{...}, relations:[{id,name,element?,size,valencies}],
//    intersection:[{i,j,k,l,p}], crosscheck:[{quantity,predicted,actual,match,source}]}
// and CSV/text lay the same data out as tables.  Output depends only on the
// inputs, never on worker count or timing.

// Scheme report used by build (no optional sections), params (intersection)
// and crosscheck (crosscheck lines).  Pass nullptr to omit a section (it is
// rendered as an empty array in JSON).
std::string render_scheme(const group_spec& g, const triple_partition& tp,
                          const name_table& nt,
                          const std::vector<intersection_entry>* intersection,
                          const crosscheck_report* crosscheck, out_format f);

struct verify_summary {
  valency_result valency;
  regularity_result regularity;
  regularity_mode mode = regularity_mode::full;
  s3_result s3;
  trivial_result trivial;
  bool oracle_checked = false;  // independent BFS orbit relabeling compared
  bool oracle_equal = false;

  bool all_pass() const {
    return valency.pass && regularity.pass && s3.pass && trivial.pass &&
           (!oracle_checked || oracle_equal);
  }
};

std::string render_verify(const group_spec& g, const verify_summary& vs,
                          out_format f);

std::string render_compare(const group_spec& a, const group_spec& b,
                           const compare_result& r, out_format f);

}  // namespace ast
