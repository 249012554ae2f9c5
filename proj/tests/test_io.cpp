#include <doctest.h>

#include "trank/gen.hpp"
#include "trank/io.hpp"

using namespace trank;

TEST_CASE("decomposition round-trips through JSON") {
  FieldContext ctx(default_modulus());
  Rng rng(64);
  for (int k = 1; k <= 2; ++k) {
    const Decomposition d = group_decomposition(k, ctx);
    const Decomposition back = decomposition_from_json(decomposition_to_json(d));
    CHECK(back.p == d.p);
    CHECK(back.dims == d.dims);
    REQUIRE(back.rank() == d.rank());
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
      CHECK(back.terms[i].u == d.terms[i].u);
      CHECK(back.terms[i].v == d.terms[i].v);
      CHECK(back.terms[i].w == d.terms[i].w);
      CHECK(back.terms[i].scale == d.terms[i].scale);
    }
  }
}

TEST_CASE("tensors and instances round-trip through JSON") {
  const SparseTensor t2 = partition_tensor(2);
  CHECK(sparse_tensor_from_json(sparse_tensor_to_json(t2, default_modulus())) == t2);

  Rng rng(65);
  for (int i = 0; i < 20; ++i) {
    TripartitionGenOptions topts;
    topts.n = 1 + static_cast<int>(rng.below(3));
    topts.density = 0.3;
    topts.plant = i % 2 == 0;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto inst = gen_tripartition(topts, local);
    const auto back = tripartition_from_json(tripartition_to_json(inst));
    CHECK(back.n == inst.n);
    CHECK(back.families == inst.families);

    SetCoverGenOptions sopts;
    sopts.n = 5 + static_cast<int>(rng.below(6));
    sopts.s = 1 + static_cast<int>(rng.below(3));
    sopts.t = 2;
    sopts.count = 6;
    const auto cover = gen_setcover(sopts, local);
    const auto cover_back = setcover_from_json(setcover_to_json(cover));
    CHECK(cover_back.n == cover.n);
    CHECK(cover_back.t == cover.t);
    CHECK(cover_back.s == cover.s);
    CHECK(cover_back.sets == cover.sets);
  }
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(tripartition_from_json(Json{{"n", 1}}), Json::exception);
  CHECK_THROWS_AS(tripartition_from_json(Json{{"n", 1}, {"families", Json::array()}}), ParameterError);
  CHECK_THROWS_AS(
      tripartition_from_json(Json::parse(R"({"n":1,"families":[[[1,2]],[],[]]})")),
      ParameterError);  // member of the wrong size
  CHECK_THROWS_AS(setcover_from_json(Json::parse(R"({"n":3,"t":1,"s":1,"sets":[[1,2]]})")),
                  ParameterError);  // set larger than s
  CHECK_THROWS_AS(decomposition_from_json(Json::parse(R"({"p":4,"dims":[1,1,1],"terms":[]})")),
                  ParameterError);  // composite modulus

  // truncated decomposition: a term vector shorter than dims
  const char* truncated =
      R"({"p":5,"dims":[2,2,2],"terms":[{"u":[1],"v":[1,1],"w":[1,1],"scale":1}]})";
  CHECK_THROWS_AS(decomposition_from_json(Json::parse(truncated)), ParameterError);

  CHECK_THROWS_AS(parse_json_file("/nonexistent/file.json"), ParameterError);
}

TEST_CASE("rank bounds serialize with exact numerator and denominator") {
  const Json j = rank_bounds_to_json(rank_bounds(2, WideInt(7)));
  CHECK(j["lower_threshold"]["num"] == "640");
  CHECK(j["lower_threshold"]["den"] == "81");
  CHECK(j["upper_bound"]["num"] == "32");
  CHECK(j["upper_bound"]["den"] == "1");
  CHECK(j["candidate_rank"] == "7");
  CHECK(j["candidate_below_threshold"] == true);
}

TEST_CASE("file write and parse round-trip") {
  const auto path = std::string("/tmp/trank_io_test.json");
  const SparseTensor t1 = partition_tensor(1);
  write_json_file(path, sparse_tensor_to_json(t1, default_modulus()));
  CHECK(sparse_tensor_from_json(parse_json_file(path)) == t1);
}
