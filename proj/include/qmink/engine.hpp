// Graded normal-form engine for the coordinate algebra: noncommutative
// polynomials modulo the quadratic-linear-constant relations
//   (R - 1)^{ij}_{kl} (x^k x^l - Z^{kl}_s x^s + T^{kl}) = 0.
#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qmink/ncpoly.hpp"
#include "qmink/structure.hpp"

namespace qmink {

/// Per-degree reduction data for the relation ideal. For every degree d up to
/// the cutoff D the span of { m_L * q_beta * m_R } is row-reduced over the
/// graded-lex monomial basis; leading words become rewrite pivots and the
/// complement (never-leading) words form the canonical basis of the quotient.
///
/// Immutable after construction; all queries are pure. The star gate runs
/// once on first use, guarded by a mutex.
class NormalFormEngine {
  public:
    /// Row-reduces the relation span through degree D. Requires the
    /// matrix-level algebra checks to pass; throws CutoffError when D < 2.
    explicit NormalFormEngine(const StructureData& sd);

    const StructureData& structure() const { return sd_; }
    int cutoff() const { return cutoff_; }
    int num_generators() const { return sd_.n; }

    /// The relation generators q_beta (one per row of a row basis of R - 1).
    const std::vector<NCPoly>& relation_generators() const { return relations_; }

    /// Canonical coset representative, supported on complement words only.
    NCPoly normal_form(NCPoly p) const;

    NCPoly multiply(const NCPoly& a, const NCPoly& b) const;

    /// Antilinear antihomomorphism with x^{i*} = x^i. Checks once that the
    /// star of every relation generator reduces to zero.
    NCPoly star(const NCPoly& a) const;

    /// True when star maps the relation ideal into itself.
    bool star_well_defined() const;
    void require_star() const; // throws StarError with a witness otherwise

    /// Number of complement words of exact degree d (quotient dimension of
    /// the degree-d slice).
    std::size_t complement_dimension(int d) const;
    bool is_complement_word(const Word& w) const { return rewrite_.find(w) == rewrite_.end(); }
    std::vector<Word> complement_words(int d) const;

    /// Non-fatal structure diagnostics (quotient dimension mismatches).
    const std::vector<std::string>& warnings() const { return warnings_; }

  private:
    NCPoly reduce(NCPoly p) const;
    void insert_row(NCPoly row);

    StructureData sd_;
    int cutoff_;
    std::vector<NCPoly> relations_;
    std::map<Word, NCPoly, GradedLex> rewrite_; // pivot word -> replacement
    std::vector<std::size_t> pivots_per_degree_;
    std::vector<std::string> warnings_;

    mutable std::once_flag star_flag_;
    mutable bool star_ok_ = false;
    mutable std::string star_witness_;
};

/// All words of exact degree d over n generators, in lex order.
std::vector<Word> all_words(int n, int d);

} // namespace qmink
