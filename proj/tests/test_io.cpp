/**
 * @file test_io.cpp
 * @brief Instance files, algebra serialization and quiver output.
 */
#include <gtest/gtest.h>

#include "hypertoric/io.hpp"
#include "hypertoric/koszul.hpp"
#include "hypertoric/suite.hpp"

using namespace hypertoric;

namespace {

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

const char* kSumZeroThree = R"({
  "n": 3,
  "lambda0_basis": [[1, -1, 0], [0, 1, -1]],
  "eta": [1, 0, 0],
  "xi": [1, 1],
  "basepoint": null
})";

}  // namespace

TEST(Instance, PolarizedFile) {
    auto in = parse_instance(kSumZeroThree);
    ASSERT_TRUE(in.polarized());
    auto X = in.as_polarized();
    EXPECT_EQ(feasible_signs(X).size(), 7u);
    EXPECT_EQ(bounded_feasible_signs(X).size(), 3u);
}

TEST(Instance, QuantizedFileWithRationalBasepoint) {
    auto in = parse_instance(R"({"n": 2, "lambda0_basis": [[1, -1]], "eta": null, "xi": [1],
                                 "basepoint": ["2/4", "-3"]})");
    ASSERT_TRUE(in.quantized());
    auto X = in.as_quantized();
    EXPECT_EQ(X.basepoint, (QVec{Q(1, 2), Q(-3)}));
    EXPECT_EQ(to_json(X)["basepoint"], Json({"1/2", "-3"}));
}

TEST(Instance, AmbientCovectorIsRestricted) {
    auto in = parse_instance(R"({"n": 3, "lambda0_basis": [[1, -1, 0], [0, 1, -1]], "eta": [1, 0, 0],
                                 "xi": [1, 0, -1]})");
    EXPECT_EQ(*in.xi, (ZVec{1, 1}));
}

TEST(Instance, RoundTrip) {
    auto in = parse_instance(kSumZeroThree);
    auto again = instance_from_json(to_json(in));
    EXPECT_EQ(to_json(again), to_json(in));
    EXPECT_EQ(equivalence_key(again.as_polarized()), equivalence_key(in.as_polarized()));
}

TEST(Instance, LargeIntegersSurviveAsStrings) {
    Z big("123456789012345678901234567890");
    EXPECT_TRUE(to_json(big).is_string());
    EXPECT_EQ(detail::parse_int(to_json(big), "x"), big);
    EXPECT_TRUE(to_json(Z(-7)).is_number_integer());
}

TEST(ParseErrors, SyntaxErrorReportsLineAndColumn) {
    try {
        parse_instance("{\n  \"n\": 3,\n  oops\n}");
        FAIL() << "expected ParseError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "ParseError");
        EXPECT_NE(std::string(e.what()).find("line 3, column"), std::string::npos) << e.what();
    }
}

TEST(ParseErrors, SchemaViolations) {
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2})"); }), "ParseError");
    EXPECT_EQ(error_code([] { parse_instance(R"([1, 2])"); }), "ParseError");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[1, "x"]]})"); }), "ParseError");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[1, -1]], "basepoint": ["1/0", "0"]})"); }),
              "ParseError");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[1, -1, 0]]})"); }), "DimensionMismatch");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[1, -1]], "eta": [1]})"); }),
              "DimensionMismatch");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[1, 0]]})"); }), "InvalidLattice");
    EXPECT_EQ(error_code([] { parse_instance(R"({"n": 2, "lambda0_basis": [[2, -2]]})"); }), "InvalidLattice");
}

TEST(Algebra, RoundTripPreservesStructure) {
    auto A = build_algebra(sum_zero_polarized(3, 1));
    auto j = to_json(A);
    auto B = algebra_from_json(j);
    EXPECT_EQ(to_json(B), j);
    EXPECT_EQ(B.dim(), A.dim());
    EXPECT_EQ(degree_dims(B), degree_dims(A));
    EXPECT_EQ(cartan_matrix(B), cartan_matrix(A));
    EXPECT_TRUE(associativity_check(B));
}

TEST(Algebra, BasisIsOrderedByDegree) {
    auto A = build_algebra(sum_zero_polarized(3, 1));
    auto j = to_json(A);
    int last = 0;
    for (const auto& b : j["basis"]) {
        EXPECT_GE(b["degree"].get<int>(), last);
        last = b["degree"].get<int>();
    }
    EXPECT_EQ(j["vertices"].get<std::vector<std::string>>(), A.vertices);
}

TEST(Algebra, CoefficientsAreRationalStrings) {
    auto j = to_json(truncated_polynomial(3));
    ASSERT_FALSE(j["table"].empty());
    for (const auto& row : j["table"])
        for (const auto& t : row[2]) EXPECT_TRUE(t[1].is_string());
    EXPECT_EQ(j.dump(), to_json(truncated_polynomial(3)).dump());
}

TEST(Quiver, SumZeroThree) {
    auto j = to_json(deligne_quiver(sum_zero_lattice(3)));
    EXPECT_EQ(j["walls"], Json::parse("[[1, 1, 1]]"));
    EXPECT_EQ(j["edges"], Json::parse("[[0, 1], [1, 0]]"));
    ASSERT_EQ(j["vertices"].size(), 2u);
    EXPECT_EQ(j["vertices"][0]["side"], "+");
    EXPECT_EQ(j["vertices"][0]["representative"], Json::parse("[-1, 1, 1]"));
}

TEST(Quiver, SignedPermutation) {
    SignedPermutation g{{1, 0}, {-1, 1}};
    EXPECT_EQ(to_json(g), Json::parse(R"({"perm": [1, 0], "signs": [-1, 1]})"));
}
