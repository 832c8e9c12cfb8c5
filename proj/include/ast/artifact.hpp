#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ast/action.hpp"
#include "ast/partition.hpp"

namespace ast {

// On-disk partition format, little-endian throughout:
//   magic "AST1"
//   u32 p, alpha, omega, k ; u8 variant (0 asl, 1 agl)
//   u32 coefficient count ; u32[] modulus polynomial, ascending degree
//   u32 class count ; u64[] class sizes ; u64 total triple count
//   run-length label payload: (u32 run length, u8 label) until total covered
struct artifact_header {
  uint32_t p = 0, alpha = 0, omega = 0, k = 0;
  variant var = variant::asl;
  std::vector<uint32_t> polynomial;
};

artifact_header header_for(const group_spec& g);

// Reconstructs the group spec described by a header; throws io_error when the
// header is inconsistent or its polynomial differs from the one this build
// derives for (p, alpha).
group_spec spec_from_header(const artifact_header& h);

struct artifact {
  artifact_header header;
  triple_partition partition;
};

// Both throw io_error on failure; read_artifact validates magic, header
// consistency, label range, run-length coverage and class sizes.
void write_artifact(const std::string& path, const artifact_header& h,
                    const triple_partition& tp);
artifact read_artifact(const std::string& path);

// Default artifact file name for a spec: ast_p<p>_a<alpha>_w<omega>_k<k>_<variant>.ast1
std::string default_artifact_name(const group_spec& g);

}  // namespace ast
