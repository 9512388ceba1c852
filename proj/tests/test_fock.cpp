#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmink/calculus.hpp"
#include "qmink/errors.hpp"
#include "qmink/fock.hpp"
#include "qmink/operators.hpp"

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

Scalar half() { return Scalar(mpq_class(1, 2)); }
Scalar third() { return Scalar(mpq_class(1, 3)); }

} // namespace

TEST_CASE("flip interchange swaps slots") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    REQUIRE(k.valid());
    Fock fock(eng, k);
    TensorState st = fock.state_from_words({word_of({0}), word_of({1})});
    std::vector<int> swap01{1, 0};
    TensorState got = fock.pi_sigma(swap01, st);
    TensorState want = fock.state_from_words({word_of({1}), word_of({0})});
    CHECK(got == want);
    // identity permutation leaves the state alone
    std::vector<int> id{0, 1};
    CHECK(fock.pi_sigma(id, st) == st);
}

TEST_CASE("two-slot symmetrization") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    TensorState st = fock.state_from_words({word_of({0}), word_of({1})});
    TensorState sym = fock.symmetrize(st, 2);
    TensorState want =
        fock.add(fock.state_from_words({word_of({0}), word_of({1})}, half()),
                 fock.state_from_words({word_of({1}), word_of({0})}, half()));
    CHECK(sym == want);
    CHECK(fock.symmetrize(sym, 2) == sym);
}

TEST_CASE("three-slot symmetrization with a repeated letter") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    // x0 (x) x0 (x) x1: six permutations collapse onto three arrangements
    TensorState st = fock.state_from_words({word_of({0}), word_of({0}), word_of({1})});
    TensorState sym = fock.symmetrize(st, 3);
    TensorState want = fock.add(
        fock.add(fock.state_from_words({word_of({0}), word_of({0}), word_of({1})}, third()),
                 fock.state_from_words({word_of({0}), word_of({1}), word_of({0})}, third())),
        fock.state_from_words({word_of({1}), word_of({0}), word_of({0})}, third()));
    CHECK(sym == want);
}

TEST_CASE("lifted derivative on a two-particle state") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    ParticleOp d0 = [&calc](const NCPoly& a) { return calc.partial(0, a); };
    // W = d_0 lifted to two particles hits both slots of sym(x0 (x) x0)
    TensorState got = fock.lift_operator(d0, 2, fock.symmetrize(
        fock.state_from_words({word_of({0}), word_of({0})}), 2));
    TensorState want = fock.add(fock.state_from_words({Word(), word_of({0})}),
                                fock.state_from_words({word_of({0}), Word()}));
    CHECK(got == want);
}

TEST_CASE("lifting the identity scales by the slot count") {
    StructureData sd = load_clamped("epsilon", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    ParticleOp idop = [](const NCPoly& a) { return a; };
    for (int n : {2, 3}) {
        std::vector<Word> slots(n, word_of({1}));
        TensorState st = fock.symmetrize(fock.state_from_words(slots), n);
        TensorState got = fock.lift_operator(idop, n, st);
        CHECK(got == fock.scaled(st, Scalar(n)));
    }
}

TEST_CASE("lifted laplacian on a squared coordinate") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Operators ops(calc);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    ParticleOp box = [&ops](const NCPoly& a) { return ops.box(a); };
    TensorState st = fock.symmetrize(fock.state_from_words({word_of({0, 0}), Word()}), 2);
    TensorState got = fock.lift_operator(box, 2, st);
    // box(x0 x0) = 2, box(1) = 0: the lift gives 2 sym(1 (x) 1) = 2 (1 (x) 1)
    TensorState want = fock.state_from_words({Word(), Word()}, Scalar(2));
    CHECK(got == want);
}

TEST_CASE("lift requires a symmetric state") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    ParticleOp idop = [](const NCPoly& a) { return a; };
    TensorState st = fock.state_from_words({word_of({0}), word_of({1})});
    CHECK_THROWS_AS(fock.lift_operator(idop, 2, st), DomainError);
}

TEST_CASE("explicit flip matrix matches the built-in flip") {
    StructureData sd = load_clamped("n2twist", 4);
    NormalFormEngine eng(sd);
    QMatrix b(4, 4);
    b.at(0, 0) = Scalar(1);
    b.at(1, 2) = Scalar(1);
    b.at(2, 1) = Scalar(1);
    b.at(3, 3) = Scalar(1);
    BraidOperator km = BraidOperator::from_matrix(eng, b);
    BraidOperator kf = BraidOperator::flip(eng);
    REQUIRE(km.valid());
    Fock fm(eng, km), ff(eng, kf);
    TensorState st = fm.add(fm.state_from_words({word_of({1, 0}), word_of({0})}),
                            fm.state_from_words({word_of({0}), word_of({1, 1})}, Scalar(3)));
    std::vector<int> swap01{1, 0};
    CHECK(fm.pi_sigma(swap01, st) == ff.pi_sigma(swap01, st));
    CHECK(fm.symmetrize(st, 2) == ff.symmetrize(st, 2));
}

TEST_CASE("braid validation flags a broken matrix") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    QMatrix b(16, 16); // zero matrix: not an involution
    BraidOperator k = BraidOperator::from_matrix(eng, b);
    CHECK(!k.valid());
    Fock fock(eng, k);
    TensorState st = fock.state_from_words({word_of({0}), word_of({1})});
    std::vector<int> swap01{1, 0};
    CHECK_THROWS_AS(fock.pi_sigma(swap01, st), GateError);
}

TEST_CASE("interchange respects the relation ideal") {
    // the two bi-normalized routes around K agree: swapping then normalizing
    // equals normalizing then swapping, for the flip
    StructureData sd = load_clamped("n2twist", 4);
    NormalFormEngine eng(sd);
    BraidOperator k = BraidOperator::flip(eng);
    Fock fock(eng, k);
    TensorState raw = fock.state_from_words({word_of({1, 0}), word_of({0})});
    TensorState nf_first = fock.state_from_words({word_of({0}), word_of({1, 0})});
    std::vector<int> swap01{1, 0};
    CHECK(fock.pi_sigma(swap01, raw) == nf_first);
}

TEST_CASE("full invariant suite on flip braidings") {
    for (const char* name : {"classical", "n2twist"}) {
        StructureData sd = load_clamped(name, 5);
        NormalFormEngine eng(sd);
        BraidOperator k = BraidOperator::flip(eng);
        std::vector<std::pair<std::string, ParticleOp>> ops;
        ops.emplace_back("multiply_by_x0", [&eng](const NCPoly& a) {
            return eng.multiply(NCPoly::generator(0), a);
        });
        ValidationReport rep = fock_suite(eng, k, 3, 42, ops);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CAPTURE(c.witness);
            CHECK(c.pass);
        }
    }
}
