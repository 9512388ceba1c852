#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmink/errors.hpp"
#include "qmink/exterior.hpp"

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
    std::uniform_int_distribution<int> coeff(-3, 3);
    NCPoly p;
    for (int t = 0; t < 2; ++t) {
        Word w;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) w.push_back(static_cast<char>(letter(rng)));
        p.add_term(w, Scalar(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
    }
    return eng.normal_form(p);
}

void check_projector(const StructureData& sd, int n) {
    Antisymmetrizer an = build_antisymmetrizer(sd, n);
    // A^2 = A, column by column
    for (std::size_t col = 0; col < an.dim; ++col) {
        SparseVec twice;
        for (const auto& [row, c] : an.cols[col])
            for (const auto& [row2, c2] : an.cols[row]) {
                twice[row2] += c2 * c;
                if (twice[row2].is_zero()) twice.erase(row2);
            }
        CHECK(twice == an.cols[col]);
    }
    // R_{nk} A = A R_{nk} = -A
    for (int k = 1; k <= n - 1; ++k) {
        for (std::size_t col = 0; col < an.dim; ++col) {
            SparseVec ra = apply_rnk(sd, n, k, an.cols[col]);
            SparseVec minus;
            for (const auto& [row, c] : an.cols[col]) minus[row] = -c;
            CHECK(ra == minus);
            // column col of A R_{nk}: A applied to R_{nk} e_col
            SparseVec e;
            e[col] = Scalar(1);
            SparseVec re = apply_rnk(sd, n, k, e);
            SparseVec ar;
            for (const auto& [mid, c] : re)
                for (const auto& [row, c2] : an.cols[mid]) {
                    ar[row] += c2 * c;
                    if (ar[row].is_zero()) ar.erase(row);
                }
            CHECK(ar == minus);
        }
    }
    // A = alpha' alpha reconstruction and dual-basis pairing
    for (std::size_t g = 0; g < an.rank; ++g)
        for (std::size_t d = 0; d < an.rank; ++d) {
            Scalar dot;
            for (const auto& [idx, c] : an.alpha[g]) {
                auto it = an.alpha_prime[d].find(idx);
                if (it != an.alpha_prime[d].end()) dot += c * it->second;
            }
            CHECK(dot == Scalar(g == d ? 1 : 0));
        }
    for (std::size_t col = 0; col < an.dim; ++col) {
        SparseVec recon;
        for (std::size_t g = 0; g < an.rank; ++g) {
            auto it = an.alpha[g].find(col);
            if (it == an.alpha[g].end()) continue;
            for (const auto& [row, c] : an.alpha_prime[g]) {
                recon[row] += c * it->second;
                if (recon[row].is_zero()) recon.erase(row);
            }
        }
        CHECK(recon == an.cols[col]);
    }
}

} // namespace

TEST_CASE("antisymmetrizer ranks for the flip structure") {
    StructureData sd = load_clamped("classical", 4);
    const std::size_t want[] = {1, 4, 6, 4, 1, 0};
    for (int n = 0; n <= 5; ++n) CHECK(build_antisymmetrizer(sd, n).rank == want[n]);
}

TEST_CASE("degree zero and one are identities") {
    for (const char* name : {"classical", "epsilon", "lattice1d"}) {
        StructureData sd = load_clamped(name, 4);
        Antisymmetrizer a0 = build_antisymmetrizer(sd, 0);
        CHECK(a0.rank == 1);
        Antisymmetrizer a1 = build_antisymmetrizer(sd, 1);
        CHECK(a1.rank == static_cast<std::size_t>(sd.n));
        for (std::size_t c = 0; c < a1.dim; ++c) {
            SparseVec e;
            e[c] = Scalar(1);
            CHECK(a1.cols[c] == e);
        }
    }
}

TEST_CASE("antisymmetrizer invariants across fixtures") {
    for (const char* name : {"classical", "epsilon"}) {
        StructureData sd = load_clamped(name, 4);
        for (int n = 2; n <= 5; ++n) check_projector(sd, n);
    }
    StructureData lat = load_clamped("lattice1d", 4);
    for (int n = 2; n <= 6; ++n) check_projector(lat, n);
    StructureData tw = load_clamped("n2twist", 4);
    for (int n = 2; n <= 6; ++n) check_projector(tw, n);
}

TEST_CASE("single-generator identity matrix kills all higher forms") {
    StructureData sd = load_clamped("lattice1d", 4);
    CHECK(build_antisymmetrizer(sd, 2).rank == 0); // (1 - R)/2 = 0 for R = [1]
    CHECK(build_antisymmetrizer(sd, 3).rank == 0);
}

TEST_CASE("size guard") {
    StructureData sd = load_clamped("classical", 4);
    CHECK_THROWS_AS(build_antisymmetrizer(sd, 10), SizeError); // 4^10 > 10^6
}

TEST_CASE("wedge of a basis form with itself vanishes classically") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    Form dx0 = ext.basis_form(word_of({0}));
    CHECK(ext.wedge(dx0, dx0).is_zero());
    Form dx1 = ext.basis_form(word_of({1}));
    Form w01 = ext.wedge(dx0, dx1);
    CHECK(!w01.is_zero());
    // antisymmetry after projection
    Form w10 = ext.wedge(dx1, dx0);
    CHECK(w01 + w10 == ext.zero_form(2));
}

TEST_CASE("top form spans the rank-one top degree") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    Form vol = ext.basis_form(word_of({0}));
    for (int i = 1; i < 4; ++i) vol = ext.wedge(vol, ext.basis_form(Word(1, static_cast<char>(i))));
    CHECK(vol.degree == 4);
    REQUIRE(vol.coeff.size() == 1);
    CHECK(!vol.coeff[0].is_zero());
    // one more factor lands in the rank-zero degree
    Form five = ext.wedge(vol, ext.basis_form(word_of({0})));
    CHECK(five.coeff.empty());
}

TEST_CASE("wedge is associative") {
    StructureData sd = load_clamped("epsilon", 5);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    std::mt19937 rng(41);
    for (int t = 0; t < 3; ++t) {
        Form a = ext.from_poly(rand_poly(rng, eng, 1));
        OneForm w1(sd.n), w2(sd.n);
        for (int i = 0; i < sd.n; ++i) {
            w1.comp[i] = rand_poly(rng, eng, 1);
            w2.comp[i] = rand_poly(rng, eng, 1);
        }
        Form f1 = ext.from_oneform(w1), f2 = ext.from_oneform(w2);
        CHECK(ext.wedge(ext.wedge(a, f1), f2) == ext.wedge(a, ext.wedge(f1, f2)));
        CHECK(ext.wedge(ext.wedge(f1, f2), a) == ext.wedge(f1, ext.wedge(f2, a)));
    }
}

TEST_CASE("exterior derivative squares to zero") {
    for (const char* name : {"classical", "epsilon"}) {
        StructureData sd = load_clamped(name, 6);
        NormalFormEngine eng(sd);
        Calculus calc(eng);
        Exterior ext(calc);
        std::mt19937 rng(43);
        for (int t = 0; t < 4; ++t) {
            NCPoly a = rand_poly(rng, eng, 5);
            CHECK(ext.d(ext.d(ext.from_poly(a))).is_zero());
        }
        for (int t = 0; t < 3; ++t) {
            OneForm w(sd.n);
            for (int i = 0; i < sd.n; ++i) w.comp[i] = rand_poly(rng, eng, 3);
            CHECK(ext.d(ext.d(ext.from_oneform(w))).is_zero());
            Form two = ext.d(ext.from_oneform(w));
            CHECK(ext.d(ext.d(two)).is_zero());
        }
        // a fixed instance: dd(x0 x1 x2) = 0
        CHECK(ext.d(ext.d(ext.from_poly(NCPoly::monomial(word_of({0, 1, 2}))))).is_zero());
    }
}

TEST_CASE("classical instance d(x0 dx1) = dx0 ^ dx1") {
    StructureData sd = load_clamped("classical", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    OneForm w(4);
    w.comp[1] = NCPoly::generator(0); // x0 dx1 in right-coefficient form
    Form lhs = ext.d(ext.from_oneform(w));
    Form rhs = ext.wedge(ext.basis_form(word_of({0})), ext.basis_form(word_of({1})));
    CHECK(lhs == rhs);
}

TEST_CASE("lattice: d(x dx) dies with the vanishing two-forms") {
    StructureData sd = load_clamped("lattice1d", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    OneForm w(1);
    w.comp[0] = NCPoly::generator(0);
    Form d = ext.d(ext.from_oneform(w));
    CHECK(d.degree == 2);
    CHECK(d.coeff.empty()); // rank A_2 = 0
}

TEST_CASE("graded star: sign, involution, derivative compatibility") {
    StructureData sd = load_clamped("classical", 5);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    // (dx0 ^ dx1)^* = -dx1 ^ dx0 = dx0 ^ dx1
    Form w01 = ext.wedge(ext.basis_form(word_of({0})), ext.basis_form(word_of({1})));
    CHECK(ext.star_form(w01) == w01);
    std::mt19937 rng(47);
    for (int t = 0; t < 4; ++t) {
        OneForm w(sd.n);
        for (int i = 0; i < sd.n; ++i) w.comp[i] = rand_poly(rng, eng, 2);
        Form two = ext.d(ext.from_oneform(w));
        CHECK(ext.star_form(ext.star_form(two)) == two);
        Form one = ext.from_oneform(w);
        CHECK(ext.d(ext.star_form(one)) == ext.star_form(ext.d(one)));
    }
    // graded anti-multiplicativity: (a ^ b)^* = (-1)^{kl} b^* ^ a^*
    for (int t = 0; t < 3; ++t) {
        OneForm w1(sd.n), w2(sd.n);
        for (int i = 0; i < sd.n; ++i) {
            w1.comp[i] = rand_poly(rng, eng, 1);
            w2.comp[i] = rand_poly(rng, eng, 1);
        }
        Form f1 = ext.from_oneform(w1), f2 = ext.from_oneform(w2);
        Form lhs = ext.star_form(ext.wedge(f1, f2));
        Form rhs = ext.wedge(ext.star_form(f2), ext.star_form(f1)).scaled(Scalar(-1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("one-form interop round-trips") {
    StructureData sd = load_clamped("epsilon", 4);
    NormalFormEngine eng(sd);
    Calculus calc(eng);
    Exterior ext(calc);
    std::mt19937 rng(53);
    for (int t = 0; t < 5; ++t) {
        OneForm w(sd.n);
        for (int i = 0; i < sd.n; ++i) w.comp[i] = rand_poly(rng, eng, 2);
        CHECK(ext.to_oneform(ext.from_oneform(w)) == w);
    }
}
