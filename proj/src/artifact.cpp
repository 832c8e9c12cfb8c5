#include "ast/artifact.hpp"

#include <fstream>

#include "ast/common.hpp"

namespace ast {
namespace {

constexpr char magic[4] = {'A', 'S', 'T', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>(v >> (8 * i));
  os.write(b, 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>(v >> (8 * i));
  os.write(b, 8);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw io_error("truncated artifact");
  return b[0] | b[1] << 8 | b[2] << 16 | static_cast<uint32_t>(b[3]) << 24;
}

uint64_t get_u64(std::istream& is) {
  uint64_t lo = get_u32(is);
  uint64_t hi = get_u32(is);
  return lo | hi << 32;
}

}  // namespace

artifact_header header_for(const group_spec& g) {
  artifact_header h;
  h.p = g.t->p();
  h.alpha = g.t->alpha();
  h.omega = g.t->omega();
  h.k = g.k;
  h.var = g.var;
  h.polynomial = g.t->polynomial();
  return h;
}

group_spec spec_from_header(const artifact_header& h) {
  group_spec g = [&] {
    try {
      return make_spec(h.p, h.alpha, h.omega, h.k, h.var);
    } catch (const bound_error&) {
      throw;
    } catch (const std::exception& e) {
      throw io_error(std::string("artifact header is not a valid spec: ") +
                     e.what());
    }
  }();
  if (g.t->polynomial() != h.polynomial)
    throw io_error("artifact was produced with a different modulus polynomial");
  return g;
}

void write_artifact(const std::string& path, const artifact_header& h,
                    const triple_partition& tp) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw io_error("cannot open " + path + " for writing");
  os.write(magic, 4);
  put_u32(os, h.p);
  put_u32(os, h.alpha);
  put_u32(os, h.omega);
  put_u32(os, h.k);
  os.put(static_cast<char>(h.var));
  put_u32(os, static_cast<uint32_t>(h.polynomial.size()));
  for (uint32_t c : h.polynomial) put_u32(os, c);
  put_u32(os, tp.class_count);
  for (uint64_t s : tp.class_sizes) put_u64(os, s);
  put_u64(os, tp.labels.size());
  uint64_t i = 0, total = tp.labels.size();
  while (i < total) {
    uint64_t j = i;
    while (j < total && tp.labels[j] == tp.labels[i] && j - i < 0xffffffffull)
      ++j;
    put_u32(os, static_cast<uint32_t>(j - i));
    os.put(static_cast<char>(tp.labels[i]));
    i = j;
  }
  os.flush();
  if (!os) throw io_error("write failure on " + path);
}

artifact read_artifact(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  char m[4];
  is.read(m, 4);
  if (!is || std::string(m, 4) != std::string(magic, 4))
    throw io_error(path + " is not a partition artifact");

  artifact a;
  a.header.p = get_u32(is);
  a.header.alpha = get_u32(is);
  a.header.omega = get_u32(is);
  a.header.k = get_u32(is);
  int vb = is.get();
  if (vb != 0 && vb != 1) throw io_error("bad variant byte");
  a.header.var = static_cast<variant>(vb);
  uint32_t plen = get_u32(is);
  if (plen > 64) throw io_error("implausible polynomial length");
  a.header.polynomial.resize(plen);
  for (uint32_t i = 0; i < plen; ++i) a.header.polynomial[i] = get_u32(is);

  uint32_t cc = get_u32(is);
  if (cc < 5 || cc > 256) throw io_error("implausible class count");
  std::vector<uint64_t> sizes(cc);
  for (uint32_t i = 0; i < cc; ++i) sizes[i] = get_u64(is);
  uint64_t total = get_u64(is);
  uint64_t omega_size = 1, cube = 0;
  // total must be a perfect cube N^3 with N <= 256
  for (omega_size = 1; omega_size <= 256; ++omega_size) {
    cube = omega_size * omega_size * omega_size;
    if (cube >= total) break;
  }
  if (cube != total || omega_size < 2)
    throw io_error("label payload size is not a valid cube");

  triple_partition& tp = a.partition;
  tp.omega_size = static_cast<uint32_t>(omega_size);
  tp.class_count = static_cast<uint16_t>(cc);
  tp.labels.reserve(total);
  while (tp.labels.size() < total) {
    uint32_t run = get_u32(is);
    int label = is.get();
    if (label < 0) throw io_error("truncated artifact");
    if (static_cast<uint32_t>(label) >= cc) throw io_error("label out of range");
    if (run == 0 || tp.labels.size() + run > total)
      throw io_error("bad run length");
    tp.labels.insert(tp.labels.end(), run, static_cast<uint8_t>(label));
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw io_error("trailing bytes after label payload");

  uint64_t expect = 1;
  for (uint32_t i = 0; i < a.header.alpha * a.header.k && expect <= 256; ++i)
    expect *= a.header.p;
  if (expect != omega_size)
    throw io_error("label payload size does not match the header spec");

  try {
    tp.recompute_stats();
  } catch (const std::exception& e) {
    throw io_error(std::string("inconsistent labels: ") + e.what());
  }
  if (tp.class_sizes != sizes)
    throw io_error("class sizes in header do not match label payload");
  return a;
}

std::string default_artifact_name(const group_spec& g) {
  return "ast_p" + std::to_string(g.t->p()) + "_a" + std::to_string(g.t->alpha()) +
         "_w" + std::to_string(g.t->omega()) + "_k" + std::to_string(g.k) + "_" +
         variant_name(g.var) + ".ast1";
}

}  // namespace ast
