#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effbounds/algnum.hpp"
#include "effbounds/bounds.hpp"
#include "effbounds/heights.hpp"

namespace effbounds {

using Monomial = std::vector<unsigned>;  // exponent vector, length = nvars

// Sparse exact multivariate polynomial over Q or a quadratic field.
struct Poly {
    int nvars = 0;
    std::map<Monomial, AlgNum> terms;  // zero coefficients never stored

    static Poly zero(int m) { return Poly{m, {}}; }
    static Poly constant(int m, const AlgNum& c);
    static Poly variable(int m, int i);

    Poly operator+(const Poly&) const;
    Poly operator-(const Poly&) const;
    Poly operator*(const Poly&) const;
    Poly scaled(const AlgNum&) const;
    bool operator==(const Poly&) const = default;

    bool is_zero() const { return terms.empty(); }
    int total_degree() const;
    bool is_homogeneous() const;
    long coeff_field() const;  // 0 if all rational, else the common D
    AlgNum eval(const std::vector<AlgNum>& point) const;
    std::string str() const;
};

// Parse a homogeneous form in X1..Xm (X,Y allowed when m = 2).
// Throws SyntaxError / NotHomogeneous.
Poly parse_form(const std::string& text, int m);

using LinearForm = std::vector<AlgNum>;  // coefficient vector, length m

Poly linear_to_poly(const LinearForm& l);
Interval coeff_height(const LinearForm& l);  // max coefficient height

// Exact square root inside Q(sqrt D) (D = 0 means Q); nullopt if none.
std::optional<AlgNum> sqrt_in_field(const AlgNum& v, long field_D);

// Exact rank of a list of vectors over the coefficient field.
int rank_of(const std::vector<LinearForm>& rows);

struct Factorization {
    std::vector<LinearForm> factors;  // with multiplicity
    AlgNum scalar;                    // F = scalar * prod(factors)
};

// m = 2: automatic (rational root search + quadratic formula in the field);
// m >= 3: factors must be supplied.  Throws DoesNotSplit / FactorsRequired /
// VerificationFailed.
Factorization factorize(const Poly& F, long field_D,
                        const std::vector<LinearForm>* supplied = nullptr);

struct GEdge {
    size_t i, j;      // L0 indices
    size_t witness;   // L0 index of a third form in span{i, j}
};

struct HEdge {
    int ci, cj;               // component ids
    LinearForm witness;       // nonzero form in span(comp ci) cap span(comp cj)
    std::vector<AlgNum> u, w; // witness = sum u_a B_ci[a] = - sum w_b B_cj[b]
    int support = 0;          // nnz(u) + nnz(w)
};

struct Verdict {
    bool rank_ok = false;
    bool connectivity_ok = false;
    bool applicable = false;
    int rank = 0;
    int k = 0;
    bool triangularly_connected = false;
    std::vector<std::string> reasons;
};

struct FormSystem {
    int m = 0, n = 0;
    long field_D = 0;
    Poly F;
    AlgNum scalar;
    std::vector<LinearForm> factors;
    std::vector<size_t> rep_of;       // factor index -> L0 index
    std::vector<AlgNum> prop_scalar;  // factor = prop_scalar * L0[rep_of]
    std::vector<LinearForm> L0;
    std::vector<GEdge> g_edges;
    std::vector<int> component;       // per L0 index, 0-based
    int k = 1;
    std::vector<HEdge> h_edges;
    bool h_connected = false;
    Verdict verdict;
};

std::vector<size_t> build_L0(const std::vector<LinearForm>& factors);

void build_graph_G(FormSystem& fs);
void build_graph_H(FormSystem& fs);
Verdict check_conditions(const FormSystem& fs);

// Full pipeline: factorize (or verify supplied), L0, graphs, verdict.
FormSystem analyze_form(const Poly& F, long field_D,
                        const std::vector<LinearForm>* supplied = nullptr);

struct EdgeData {
    size_t edge_index = 0;
    AlgNum lambda_i, lambda_j, lambda;
    Interval h_lambda_i, h_lambda_j, h_lambda;
    Interval H_edge;      // Theorem 1 input height for this edge
    Interval A_edge;      // per-edge unit-equation bound (linear scale)
};

struct UnitEquationSystem {
    AlgNum delta_norm;                 // delta after integral normalization
    Interval h_delta_norm;
    Interval lemma3_term;              // L3 = (1/d) log N_S(delta') + c3 R_K + (h_K/d) log Q_S
    std::vector<EdgeData> edges;       // one per G-edge
    std::vector<int> bfs_dist;         // per L0 vertex, within its component
    std::vector<Interval> vertex_bound;       // h(delta_v / eps_comp) bound
    std::vector<Interval> vertex_bound_global;// h(delta_v / eps) bound, global eps
    std::vector<int> h_order;          // component visit order (k > 1)
    Interval h_eps;                    // bound on h(eps)
    std::vector<Interval> h_delta_i;   // per L0 vertex bound on h(delta_i)
};

UnitEquationSystem reduce_to_unit_equations(const FormSystem& fs, const AlgNum& delta,
                                            const SSpec& S, bool use_thm_b = false);

struct Thm3Report {
    BoundReport report;
    nlohmann::ordered_json trace;
    UnitEquationSystem system;
};

// Theorem 3 / Corollary 4 bound with the full derivation trace.
// use_thm_b = true assembles the Gyory-Yu-shaped (3.1) variant (id "eq31").
Thm3Report bound_thm_3(const FormSystem& fs, const AlgNum& delta, const SSpec& S,
                       bool use_thm_b = false);

} // namespace effbounds
