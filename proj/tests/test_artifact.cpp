#include "ast/artifact.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ast/common.hpp"
#include "doctest.h"

using namespace ast;

namespace {

struct temp_file {
  std::string path;
  explicit temp_file(const std::string& name) : path("/tmp/ast3_test_" + name) {}
  ~temp_file() { std::remove(path.c_str()); }
};

std::vector<char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<char>(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("artifact round trip") {
  group_spec g = make_spec(2, 2, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  temp_file f("roundtrip.ast1");
  write_artifact(f.path, header_for(g), tp);

  artifact a = read_artifact(f.path);
  CHECK(a.header.p == 2);
  CHECK(a.header.alpha == 2);
  CHECK(a.header.omega == 1);
  CHECK(a.header.k == 2);
  CHECK(a.header.var == variant::asl);
  CHECK(a.header.polynomial == g.t->polynomial());
  CHECK(a.partition.labels == tp.labels);
  CHECK(a.partition.class_sizes == tp.class_sizes);
  CHECK(a.partition.class_count == tp.class_count);

  group_spec g2 = spec_from_header(a.header);
  CHECK(g2.space.size == g.space.size);
  CHECK(g2.var == g.var);

  // writing the same partition twice is byte-identical
  temp_file f2("roundtrip2.ast1");
  write_artifact(f2.path, header_for(g), tp);
  CHECK(slurp(f.path) == slurp(f2.path));
}

TEST_CASE("read rejects corrupted files") {
  group_spec g = make_spec(3, 1, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  temp_file f("corrupt.ast1");
  write_artifact(f.path, header_for(g), tp);
  std::vector<char> good = slurp(f.path);
  REQUIRE(good.size() > 40);

  SUBCASE("bad magic") {
    auto bytes = good;
    bytes[0] = 'X';
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("truncated payload") {
    auto bytes = good;
    bytes.resize(bytes.size() - 3);
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("trailing garbage") {
    auto bytes = good;
    bytes.push_back(0);
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("label out of range") {
    auto bytes = good;
    bytes.back() = 50;  // final run label; class count is 7
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("variant byte") {
    auto bytes = good;
    bytes[20] = 9;  // magic(4) + 4 u32 = offset 20
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("class size mismatch") {
    auto bytes = good;
    // class sizes start after magic(4), 4 u32(16), variant(1),
    // poly count(4) + poly(2 * 4), class count(4): offset 37
    size_t off = 4 + 16 + 1 + 4 + 8 + 4;
    bytes[off] = static_cast<char>(bytes[off] + 1);
    spit(f.path, bytes);
    CHECK_THROWS_AS(read_artifact(f.path), io_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_artifact("/tmp/ast3_no_such_file.ast1"), io_error);
  }
}

TEST_CASE("spec_from_header validates") {
  artifact_header h;
  h.p = 4;  // composite
  h.alpha = 1;
  h.omega = 1;
  h.k = 2;
  h.polynomial = {0, 1};
  CHECK_THROWS_AS(spec_from_header(h), io_error);

  artifact_header h2;
  h2.p = 3;
  h2.alpha = 1;
  h2.omega = 1;
  h2.k = 2;
  h2.polynomial = {9, 9};  // wrong modulus for gf(3)
  CHECK_THROWS_AS(spec_from_header(h2), io_error);
}

TEST_CASE("default artifact names") {
  CHECK(default_artifact_name(make_spec(2, 2, 1, 2, variant::asl)) ==
        "ast_p2_a2_w1_k2_asl.ast1");
  CHECK(default_artifact_name(make_spec(3, 1, 1, 3, variant::agl)) ==
        "ast_p3_a1_w1_k3_agl.ast1");
}
