#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmink/engine.hpp"
#include "qmink/errors.hpp"

using namespace qmink;

namespace {

std::string fixture(const char* name) {
    return std::string(QMINK_FIXTURES) + "/" + name + ".json";
}

StructureData load_clamped(const char* name, int cutoff) {
    StructureData sd = load_structure(fixture(name));
    sd.degree_cutoff = cutoff;
    return sd;
}

NCPoly rand_poly(std::mt19937& rng, const NormalFormEngine& eng, int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<int> letter(0, eng.num_generators() - 1);
    std::uniform_int_distribution<int> coeff(-4, 4);
    NCPoly p;
    for (int t = 0; t < 3; ++t) {
        Word w;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) w.push_back(static_cast<char>(letter(rng)));
        int c = coeff(rng);
        if (c == 0) c = 2;
        p.add_term(w, Scalar(mpq_class(c), mpq_class(coeff(rng)))); // small Gaussian integers
    }
    return p;
}

Word rand_word(std::mt19937& rng, int n, int deg) {
    std::uniform_int_distribution<int> letter(0, n - 1);
    Word w;
    for (int k = 0; k < deg; ++k) w.push_back(static_cast<char>(letter(rng)));
    return w;
}

// N=2 Weyl-type structure: flip R, Z = 0, T antisymmetric, so [x0, x1] = -1
StructureData weyl2() {
    std::string text = R"({
      "n": 2,
      "r": [["1","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","1"]],
      "z": [["0","0"],["0","0"],["0","0"],["0","0"]],
      "t": ["0","1/2","-1/2","0"],
      "g": [["1","0"],["0","1"]],
      "degree_cutoff": 6
    })";
    return parse_structure(text);
}

} // namespace

TEST_CASE("classical engine: nondecreasing words form the complement") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    CHECK(eng.complement_dimension(0) == 1);
    CHECK(eng.complement_dimension(1) == 4);
    CHECK(eng.complement_dimension(2) == 10); // C(5,2)
    CHECK(eng.complement_dimension(3) == 20);
    CHECK(eng.warnings().empty());
    for (const Word& w : eng.complement_words(2)) {
        CHECK(w[0] <= w[1]); // sorted words survive
    }
    // commutative reordering
    CHECK(eng.normal_form(NCPoly::monomial(word_of({1, 0}))) ==
          NCPoly::monomial(word_of({0, 1})));
}

TEST_CASE("one generator with no relations is free") {
    StructureData sd = load_clamped("lattice1d", 8);
    NormalFormEngine eng(sd);
    CHECK(eng.relation_generators().empty());
    for (int d = 0; d <= 8; ++d) CHECK(eng.complement_dimension(d) == 1);
    NCPoly x4 = NCPoly::monomial(Word(4, 0));
    CHECK(eng.normal_form(x4) == x4);
}

TEST_CASE("two-generator twist records the expected rewrite") {
    // by hand: x^j x^i - x^i x^j = (Z^{ji}_s - Z^{ij}_s) x^s, so with
    // Z^{01}_0 = c the word x1 x0 rewrites to x0 x1 - c x0
    StructureData sd = load_clamped("n2twist", 6);
    NormalFormEngine eng(sd);
    Scalar c(mpq_class(0), mpq_class(1, 2));
    NCPoly expect = NCPoly::monomial(word_of({0, 1})) - NCPoly::monomial(word_of({0}), c);
    CHECK(eng.normal_form(NCPoly::monomial(word_of({1, 0}))) == expect);
    CHECK(eng.multiply(NCPoly::generator(1), NCPoly::generator(0)) == expect);
    for (int d = 0; d <= 6; ++d)
        CHECK(eng.complement_dimension(d) == static_cast<std::size_t>(d + 1));
    CHECK(eng.warnings().empty());
}

TEST_CASE("constant relation terms reach the normal form") {
    StructureData sd = weyl2();
    NormalFormEngine eng(sd);
    // [x0, x1] = -1 here, so x1 x0 = x0 x1 + 1
    NCPoly expect = NCPoly::monomial(word_of({0, 1})) + NCPoly::constant(Scalar(1));
    CHECK(eng.normal_form(NCPoly::monomial(word_of({1, 0}))) == expect);
    CHECK(eng.warnings().empty());
    // star is not an involution of this relation ideal (real constant term)
    CHECK(!eng.star_well_defined());
    CHECK_THROWS_AS(eng.star(NCPoly::generator(0)), StarError);
}

TEST_CASE("normal form is idempotent and respects the cutoff") {
    StructureData sd = load_clamped("epsilon", 5);
    NormalFormEngine eng(sd);
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        NCPoly p = rand_poly(rng, eng, 5);
        NCPoly nf = eng.normal_form(p);
        CHECK(eng.normal_form(nf) == nf);
        CHECK(nf.normalized());
    }
    CHECK_THROWS_AS(eng.normal_form(NCPoly::monomial(Word(6, 0))), CutoffError);
    CHECK_THROWS_AS(eng.multiply(NCPoly::monomial(Word(3, 0)), NCPoly::monomial(Word(3, 1))),
                    CutoffError);
}

TEST_CASE("multiplication: unit, squares, associativity") {
    StructureData sd = load_clamped("epsilon", 6);
    NormalFormEngine eng(sd);
    NCPoly one = NCPoly::constant(Scalar(1));
    NCPoly x0 = NCPoly::generator(0);
    CHECK(eng.multiply(one, x0) == x0);
    CHECK(eng.multiply(NCPoly::generator(0), NCPoly::generator(1)) ==
          NCPoly::monomial(word_of({0, 1})));
    // (x0 + 1)(x0 - 1) = x0^2 - 1 in any structure
    NCPoly lhs = eng.multiply(x0 + one, x0 - one);
    CHECK(lhs == NCPoly::monomial(word_of({0, 0})) - one);
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        NCPoly a = rand_poly(rng, eng, 2), b = rand_poly(rng, eng, 2), c = rand_poly(rng, eng, 2);
        CHECK(eng.multiply(a, eng.multiply(b, c)) == eng.multiply(eng.multiply(a, b), c));
    }
}

TEST_CASE("ideal membership reduces to zero") {
    for (const char* name : {"classical", "epsilon", "n2twist"}) {
        StructureData sd = load_clamped(name, 6);
        NormalFormEngine eng(sd);
        std::mt19937 rng(5);
        for (const NCPoly& q : eng.relation_generators()) {
            CHECK(eng.normal_form(q).is_zero());
            for (int t = 0; t < 5; ++t) {
                Word ml = rand_word(rng, sd.n, 2), mr = rand_word(rng, sd.n, 2);
                NCPoly padded =
                    NCPoly::monomial(ml).concat_mul(q).concat_mul(NCPoly::monomial(mr));
                CHECK(eng.normal_form(padded).is_zero());
            }
        }
    }
}

TEST_CASE("star: generators fixed, antihomomorphism, involution") {
    StructureData sd = load_clamped("epsilon", 6);
    NormalFormEngine eng(sd);
    REQUIRE(eng.star_well_defined());
    for (int i = 0; i < sd.n; ++i) CHECK(eng.star(NCPoly::generator(i)) == NCPoly::generator(i));
    // classical instance: star(i x0 x1) = -i x0 x1
    StructureData cl = load_clamped("classical", 4);
    NormalFormEngine ceng(cl);
    NCPoly p = NCPoly::monomial(word_of({0, 1}), Scalar::i());
    CHECK(ceng.star(p) == NCPoly::monomial(word_of({0, 1}), -Scalar::i()));
    std::mt19937 rng(13);
    for (int t = 0; t < 10; ++t) {
        NCPoly a = rand_poly(rng, eng, 2), b = rand_poly(rng, eng, 2);
        CHECK(eng.star(eng.multiply(a, b)) == eng.multiply(eng.star(b), eng.star(a)));
        CHECK(eng.star(eng.star(a)) == eng.normal_form(a));
    }
}

TEST_CASE("twist star consistency forces an imaginary twist") {
    // star(x1 x0) computed two ways agrees exactly when c is imaginary
    StructureData sd = load_clamped("n2twist", 4);
    NormalFormEngine eng(sd);
    REQUIRE(eng.star_well_defined());
    NCPoly w = NCPoly::monomial(word_of({1, 0}));
    CHECK(eng.star(w) == NCPoly::monomial(word_of({0, 1})));
    // with a real twist the ideal is not star-closed
    StructureData bad = load_clamped("n2twist", 4);
    bad.z.at(1, 0) = Scalar(mpq_class(1, 2));
    NormalFormEngine beng(bad);
    CHECK(!beng.star_well_defined());
}

TEST_CASE("polynomial text syntax round-trips") {
    StructureData sd = load_clamped("classical", 6);
    NormalFormEngine eng(sd);
    std::mt19937 rng(17);
    for (int t = 0; t < 25; ++t) {
        NCPoly p = eng.normal_form(rand_poly(rng, eng, 3));
        CHECK(NCPoly::parse(p.str(), sd.n) == p);
    }
    CHECK(NCPoly::parse("(3/2+1/2i)*x0*x2*x1", 4) ==
          NCPoly::monomial(word_of({0, 2, 1}), Scalar(mpq_class(3, 2), mpq_class(1, 2))));
    CHECK(NCPoly::parse("x3", 4) == NCPoly::generator(3));
    CHECK(NCPoly::parse("0", 4).is_zero());
    CHECK(NCPoly::parse("2*x0 + x1", 4) ==
          NCPoly::monomial(word_of({0}), Scalar(2)) + NCPoly::generator(1));
    CHECK_THROWS_AS(NCPoly::parse("x9", 4), ParseError);
    CHECK_THROWS_AS(NCPoly::parse("x0**x1", 4), ParseError);
    CHECK_THROWS_AS(NCPoly::parse("(1/2", 4), ParseError);
}

TEST_CASE("cutoff below the relation degree is rejected") {
    StructureData sd = load_clamped("classical", 1);
    CHECK_THROWS_AS(NormalFormEngine{sd}, CutoffError);
}

TEST_CASE("a collapsing structure raises a dimension warning") {
    // R = [-1] makes x^2 itself a relation, so the quotient is smaller than
    // the commutative polynomial ring from degree 2 on
    std::string text = R"({
      "n": 1, "r": [["-1"]], "z": [["0"]], "t": ["0"], "g": [["1"]],
      "degree_cutoff": 4
    })";
    StructureData sd = parse_structure(text);
    NormalFormEngine eng(sd);
    CHECK(eng.complement_dimension(2) == 0);
    CHECK(!eng.warnings().empty());
    CHECK(eng.warnings().front().find("degree 2") != std::string::npos);
}
