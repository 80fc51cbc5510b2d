#pragma once

// Dimension calculus for sheaf cohomology on P^n and P^a x P^b: line bundles,
// twisted differentials, Kunneth, Serre duality and pushforward along the
// Segre embedding P^1 x P^1 -> P^3.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hocalc/error.hpp"

namespace hocalc {

using Dim = long long;
/// h^0, ..., h^dim of one sheaf.
using Column = std::vector<Dim>;

/// C(x, k), zero whenever x < k or k < 0. Throws std::overflow_error.
Dim binomial(Dim x, Dim k);

/// h^q(P^n, O(m)).
Dim h_line(int n, int m, int q);
/// h^q(P^n, Omega^p(m)) by the Bott formula.
Dim h_omega(int n, int p, int m, int q);
/// Sum over i + j = q of h^i(P^a, O(m1)) h^j(P^b, O(m2)).
Dim kunneth(int a, int b, int m1, int m2, int q);
/// C(d + vars - 1, vars - 1): monomials of degree d in `vars` variables.
Dim dim_graded_piece(int vars, int d);

/// h^q(P^n, O(m)) = h^(n-q)(P^n, O(-m-n-1)) for all q.
bool serre_dual_check(int n, int m);
/// The same on P^1 x P^1 with canonical bundle O(-2, -2).
bool serre_dual_check_bidegree(int a, int b);

/// Dimensions of a long exact sequence V_0 -> V_1 -> ... with some entries
/// unknown, completed by propagating ranks. Throws AmbiguousChase when a rank
/// is not forced and std::logic_error when the data is inconsistent.
Column complete_long_exact(const std::vector<std::optional<Dim>>& dims);

/// One short exact sequence 0 -> S -> M -> Q -> 0 used by a chase.
struct ChaseStep {
    int p = 0;
    bool upward = true; // S computed from M, Q; otherwise Q from S, M
    Column sub, middle, quotient;
};

struct ChaseResult {
    Column column;
    std::vector<ChaseStep> steps;
};

/// h^q(P^n, Omega^p(m)) for all q from the Euler sequences
/// 0 -> Omega^p(m) -> O(m-p)^C(n+1,p) -> Omega^(p-1)(m) -> 0, starting from
/// Omega^0 = O and Omega^n = O(-n-1). Independent of the Bott formula.
ChaseResult euler_chase_detailed(int n, int p, int m);
Column euler_chase(int n, int p, int m);

/// h^q(P^1 x P^1, i^* Omega^p_{P^3} (x) O(a, b)) from the Euler sequences
/// restricted along the Segre embedding i.
Column pulled_omega(int p, int a, int b);

// ---- sheaf descriptors ----

struct Space {
    std::vector<int> factors; // {n} for P^n, {a, b} for P^a x P^b

    int dim() const;
    std::string name() const;
    bool operator==(const Space&) const = default;

    /// "P3", "P1xP1", "P^2 x P^3", ...
    static Space parse(const std::string& text);
};

/// Expression tree of a descriptor before evaluation.
struct SheafExpr {
    enum class Kind { line, omega, tangent, dual, push, pullback, tensor };
    Kind kind;
    std::vector<int> twist; // line / tensor: one entry per factor, or one for a diagonal twist
    int p = 0;              // omega
    std::vector<std::shared_ptr<const SheafExpr>> args;
};
using SheafExprPtr = std::shared_ptr<const SheafExpr>;

/// How to read the dual of a pushforward i_* E.
enum class DualReading {
    /// i_*(E^dual): dualize on P^1 x P^1, then push.
    naive,
    /// RHom(i_* E, O) = i_*(E^dual (x) O(2, 2))[-1].
    grothendieck,
};

std::string reading_name(DualReading r);

struct SheafDescriptor {
    Space space;
    SheafExprPtr expr;
    std::string text;

    /// Parses the grammar of docs/sheaf-grammar.md. Throws SchemaError.
    static SheafDescriptor parse(const Space& space, const std::string& text);
    /// True when the value depends on the dual reading.
    bool reading_dependent() const;
};

struct CohEntry {
    Dim dim = 0;
    std::string rule;
};

struct CohTable {
    std::string descriptor;
    Space space;
    std::optional<DualReading> reading;
    std::vector<CohEntry> entries; // q = 0 .. dim(space)

    Dim h(int q) const { return q < 0 || q >= static_cast<int>(entries.size()) ? 0 : entries[q].dim; }
};

CohTable cohomology(const SheafDescriptor& d, DualReading reading = DualReading::naive);
/// One table, or one per reading when the descriptor is reading dependent.
std::vector<CohTable> cohomology_tables(const SheafDescriptor& d);

/// h^q(P^3, i_*(O(a, b)) (x) O(m)).
CohTable segre_push_table(int a, int b, int m);

// ---- the quadric report ----

enum class StepStatus { start, match, mismatch, info };

struct ReportStep {
    std::string chain;    // "1", "2" or "claim"
    std::string label;    // the group as written
    std::string reading;  // evaluation used, empty when unambiguous
    Dim dim = 0;
    std::string rule;
    StepStatus status = StepStatus::info;
    std::string note;
};

struct Prop2Report {
    std::vector<ReportStep> steps;
    Dim h2_p1p1_m6 = 0;
    Dim h0_p1p1_33 = 0;
    Dim dim_s10 = 0;
    Dim h1_omega_m5 = 0;
    Dim h2_omega_m5 = 0;
    int mismatches = 0;
    /// Every candidate receiving group of the product is zero.
    bool product_target_zero = false;
};

Prop2Report prop2_report();

std::string status_name(StepStatus s);

} // namespace hocalc
