#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmink/errors.hpp"
#include "qmink/qmatrix.hpp"
#include "qmink/scalar.hpp"

using namespace qmink;

TEST_CASE("scalar arithmetic is exact and closed") {
    Scalar a(mpq_class(1, 3), mpq_class(2, 5));
    Scalar b(mpq_class(-1, 2), mpq_class(1, 7));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK((a * b) / b == a);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).is_real());
    CHECK(a * a.inverse() == Scalar(1));
    CHECK_THROWS_AS(Scalar().inverse(), SingularMetricError);
}

TEST_CASE("complex literal parsing") {
    Scalar s = Scalar::parse("1/3+2/5i");
    CHECK(s.re() == mpq_class(1, 3));
    CHECK(s.im() == mpq_class(2, 5));
    CHECK(Scalar::parse("-7").re() == -7);
    CHECK(Scalar::parse("0+1/2i") == Scalar(mpq_class(0), mpq_class(1, 2)));
    CHECK(Scalar::parse("3/2-1/2i") == Scalar(mpq_class(3, 2), mpq_class(-1, 2)));
    CHECK(Scalar::parse("-1/2-1/3i").im() == mpq_class(-1, 3));
    CHECK_THROWS_AS(Scalar::parse("2/4"), ParseError); // not in lowest terms
    CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/2i"), ParseError); // needs explicit real part
    CHECK_THROWS_AS(Scalar::parse(""), ParseError);
}

TEST_CASE("literal printing round-trips") {
    for (const char* lit : {"0", "5", "-5", "1/3", "-2/7", "1/3+2/5i", "0+1i", "3-1/2i",
                            "-1/2-8/3i"}) {
        Scalar s = Scalar::parse(lit);
        CHECK(Scalar::parse(s.str()) == s);
        CHECK(s.str() == lit);
    }
}

TEST_CASE("exact inverse and a singular rejection") {
    QMatrix g(2, 2);
    g.at(0, 0) = Scalar(1);
    g.at(0, 1) = Scalar(2);
    g.at(1, 0) = Scalar(2);
    g.at(1, 1) = Scalar(0);
    QMatrix inv = g.inverse();
    CHECK(g * inv == QMatrix::identity(2));
    QMatrix zero(2, 2);
    CHECK_THROWS_AS(zero.inverse(), SingularMetricError);
}

TEST_CASE("rref ranks") {
    QMatrix m(3, 3);
    m.at(0, 0) = Scalar(1);
    m.at(0, 2) = Scalar(2);
    m.at(1, 0) = Scalar(2);
    m.at(1, 2) = Scalar(4); // dependent row
    m.at(2, 1) = Scalar(5);
    CHECK(m.rank() == 2);
    CHECK(QMatrix::identity(4).rank() == 4);
    CHECK(QMatrix(3, 3).rank() == 0);
}

TEST_CASE("congruence diagonalization") {
    QMatrix g(2, 2);
    g.at(0, 0) = Scalar(1);
    g.at(0, 1) = Scalar(2);
    g.at(1, 0) = Scalar(2);
    g.at(1, 1) = Scalar(0);
    Congruence c = congruence_diagonalize(g);
    // P g P^T must equal diag(c.diag)
    QMatrix lhs = c.p * g * c.p.transpose();
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t col = 0; col < 2; ++col)
            CHECK(lhs.at(r, col) == ((r == col) ? c.diag[r] : Scalar()));
    // zero diagonal pivot is handled by a congruence move
    QMatrix h(2, 2);
    h.at(0, 1) = Scalar(1);
    h.at(1, 0) = Scalar(1);
    Congruence ch = congruence_diagonalize(h);
    QMatrix lh = ch.p * h * ch.p.transpose();
    CHECK(lh.at(0, 1).is_zero());
    CHECK(lh.at(1, 0).is_zero());
    CHECK(!ch.diag[0].is_zero());
    CHECK(!ch.diag[1].is_zero());
}

TEST_CASE("kronecker product shape and entries") {
    QMatrix a(2, 2), b(2, 2);
    a.at(0, 1) = Scalar(2);
    b.at(1, 0) = Scalar(3);
    QMatrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k.at(1, 2) == Scalar(6)); // (0,1) block times b(1,0)
}
