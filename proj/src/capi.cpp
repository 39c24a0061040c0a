#include "latdist/latdist.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "distortion.hpp"
#include "errors.hpp"
#include "gadgets.hpp"
#include "gram.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "norms.hpp"
#include "rat.hpp"
#include "reduce.hpp"
#include "seysen.hpp"

struct latdist_matrix {
    latdist::RatMatrix m;
    std::string label;
};

namespace {

using nlohmann::json;
using namespace latdist;

constexpr const char* kVersion = "0.1.0";

thread_local std::string g_last_error;

char* dup_cstr(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

latdist_status map_errc(errc c) {
    switch (c) {
        case errc::parse: return LATDIST_ERR_PARSE;
        case errc::bad_argument: return LATDIST_ERR_BAD_ARGUMENT;
        case errc::rank_deficient: return LATDIST_ERR_RANK_DEFICIENT;
        case errc::singular: return LATDIST_ERR_SINGULAR;
        case errc::budget_exceeded: return LATDIST_ERR_BUDGET_EXCEEDED;
        case errc::non_dividing: return LATDIST_ERR_NON_DIVIDING;
        case errc::not_unipotent: return LATDIST_ERR_NOT_UNIPOTENT;
        case errc::invalid_gamma: return LATDIST_ERR_INVALID_GAMMA;
        case errc::no_witness: return LATDIST_ERR_NO_WITNESS;
        case errc::violation: return LATDIST_ERR_VIOLATION;
        case errc::internal: return LATDIST_ERR_INTERNAL;
    }
    return LATDIST_ERR_INTERNAL;
}

template <typename F>
latdist_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return LATDIST_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LATDIST_ERR_INTERNAL;
    }
}

const RatMatrix& require_matrix(const latdist_matrix* m) {
    if (!m) fail(errc::bad_argument, "null matrix handle");
    return m->m;
}

void require_out(const void* p) {
    if (!p) fail(errc::bad_argument, "null output pointer");
}

json grid_json(const RatMatrix& m) {
    json grid = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        grid.push_back(std::move(row));
    }
    return grid;
}

json vec_json(const RatVec& v) {
    json out = json::array();
    for (const Rat& x : v) out.push_back(rat_str(x));
    return out;
}

json int_vec_json(const std::vector<Int>& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(x.get_str());
    return out;
}

RatVec vec_from_strings(const char* const* entries, int len) {
    if (len < 1 || !entries) fail(errc::bad_argument, "missing vector entries");
    RatVec out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        if (!entries[i]) fail(errc::bad_argument, "null vector entry");
        out[static_cast<std::size_t>(i)] = parse_rat(entries[i]);
    }
    return out;
}

void emit_report(const json& doc, char** out_report) {
    require_out(out_report);
    *out_report = dup_cstr(doc.dump(2) + "\n");
    if (!*out_report) fail(errc::internal, "out of memory");
}

json basis_measurements(const RatMatrix& b) {
    json out;
    out["eta_sq"] = rat_str(eta_sq(b));
    out["eta"] = format_double(eta(b));
    out["s_sq"] = rat_str(s_condition_sq(b));
    out["s"] = format_double(s_condition(b));
    if (b.rows() == b.cols())
        out["s_prime"] = rat_str(s_prime(b));
    else
        out["s_prime"] = nullptr;
    return out;
}

json instance_json(const CvpAlphaInstance& inst, const std::string& label) {
    json out;
    out["n"] = inst.lattice.dim();
    out["basis"] = grid_json(inst.lattice.basis());
    out["target"] = vec_json(inst.target);
    out["d_sq"] = rat_str(inst.d_sq);
    out["gamma"] = format_double(inst.gamma);
    out["alpha"] = format_double(inst.alpha);
    if (!label.empty()) out["label"] = label;
    return out;
}

uint64_t mix_seed(uint64_t seed, int n, int trial) {
    uint64_t h = seed;
    h ^= static_cast<uint64_t>(n) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<uint64_t>(trial + 1) * 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
    return h;
}

long bounded_draw(std::mt19937_64& rng, int bound) {
    const uint64_t width = 2 * static_cast<uint64_t>(bound) + 1;
    return static_cast<long>(rng() % width) - bound;
}

RatMatrix random_unipotent(int n, int bound, uint64_t seed) {
    std::mt19937_64 rng(seed);
    RatMatrix a = RatMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat e(Int(bounded_draw(rng, bound * 1000)), Int(1000));
            e.canonicalize();
            a(i, j) = e;
        }
    return a;
}

json bench_luktracy_growth(int n_min, int n_max, uint64_t budget) {
    json rows = json::array();
    double prev = 0.0;
    for (int n = n_min; n <= n_max; ++n) {
        RatMatrix b = luk_tracy(n);
        const double kappa_in = condition_number(b);
        const int k = std::min(4, n);
        ReducedBasis rb = reduced_basis_pipeline(b, k, budget);
        const double kappa_out = condition_number(rb.basis);
        json row;
        row["n"] = n;
        row["k"] = k;
        row["kappa_basis"] = format_double(kappa_in);
        row["kappa_pipeline"] = format_double(kappa_out);
        if (prev > 0.0)
            row["growth_ratio"] = format_double(kappa_in / prev);
        else
            row["growth_ratio"] = nullptr;
        prev = kappa_in;
        rows.push_back(std::move(row));
    }
    return rows;
}

json bench_seysen_zeta(int n_min, int n_max, int trials, uint64_t seed) {
    json rows = json::array();
    for (int n = n_min; n <= n_max; ++n) {
        Rat worst_in(0);
        Rat worst_out(0);
        for (int t = 0; t < trials; ++t) {
            RatMatrix a = random_unipotent(n, 100, mix_seed(seed, n, t));
            Rat before = s_prime(a);
            SeysenReport rep = seysen_condition(a);
            worst_in = std::max(worst_in, before);
            worst_out = std::max(worst_out, rep.s_prime_value);
        }
        json row;
        row["n"] = n;
        row["trials"] = trials;
        row["worst_input_s_prime"] = rat_str(worst_in);
        row["worst_s_prime"] = rat_str(worst_out);
        rows.push_back(std::move(row));
    }
    return rows;
}

json bench_transference(int n_min, int n_max, int trials, uint64_t seed, uint64_t budget,
                        int* violations) {
    json rows = json::array();
    for (int n = n_min; n <= n_max; ++n) {
        int bad = 0;
        Rat lo;
        Rat hi;
        bool first = true;
        for (int t = 0; t < trials; ++t) {
            LatticeHandle l = random_integer_lattice(n, 5, mix_seed(seed, n, t));
            TransferenceReport rep = transference_check(l, budget);
            if (!rep.ok) ++bad;
            for (const Rat& p : rep.products_sq) {
                if (first || p < lo) lo = p;
                if (first || p > hi) hi = p;
                first = false;
            }
        }
        *violations += bad;
        json row;
        row["n"] = n;
        row["trials"] = trials;
        row["violations"] = bad;
        row["min_product_sq"] = first ? json(nullptr) : json(rat_str(lo));
        row["max_product_sq"] = first ? json(nullptr) : json(rat_str(hi));
        rows.push_back(std::move(row));
    }
    return rows;
}

json bench_sandwich(int n_min, int n_max, int trials, uint64_t seed, uint64_t budget,
                    int* violations) {
    json rows = json::array();
    for (int n = n_min; n <= n_max; ++n) {
        int bad = 0;
        int skipped = 0;
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            LatticeHandle l1 = random_integer_lattice(n, 3, mix_seed(seed, n, 2 * t));
            LatticeHandle l2 = random_integer_lattice(n, 3, mix_seed(seed, n, 2 * t + 1));
            DistortionCertificate cert = ldp_solve(l1, l2, std::min(2, n), budget);
            if (!cert.has_lower_bound) {
                ++skipped;
                continue;
            }
            if (!distortion_upper_bound_check(cert)) ++bad;
            const double lower = sqrt_double(cert.lower_bound_sq);
            if (lower > 0.0) worst = std::max(worst, cert.upper_bound / lower);
        }
        *violations += bad;
        json row;
        row["n"] = n;
        row["trials"] = trials;
        row["violations"] = bad;
        row["skipped"] = skipped;
        row["max_kappa_over_lower"] = format_double(worst);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

extern "C" {

const char* latdist_version(void) { return kVersion; }

const char* latdist_last_error(void) { return g_last_error.c_str(); }

void latdist_string_free(char* s) { std::free(s); }

void latdist_matrix_free(latdist_matrix* m) { delete m; }

latdist_status latdist_matrix_parse(const char* text, latdist_matrix** out) {
    return guarded([&] {
        require_out(out);
        if (!text) fail(errc::bad_argument, "null input text");
        MatrixFile mf = parse_matrix_text(text);
        *out = new latdist_matrix{std::move(mf.matrix), std::move(mf.label)};
    });
}

latdist_status latdist_matrix_from_entries(int rows, int cols, const char* const* entries,
                                           latdist_matrix** out) {
    return guarded([&] {
        require_out(out);
        if (rows < 1 || cols < 1) fail(errc::bad_argument, "matrix shape must be positive");
        if (!entries) fail(errc::bad_argument, "null entries");
        RatMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const char* e = entries[i * cols + j];
                if (!e) fail(errc::bad_argument, "null matrix entry");
                m(i, j) = parse_rat(e);
            }
        *out = new latdist_matrix{std::move(m), ""};
    });
}

latdist_status latdist_matrix_to_json(const latdist_matrix* m, const char* label,
                                      char** out_json) {
    return guarded([&] {
        const RatMatrix& mat = require_matrix(m);
        require_out(out_json);
        const std::string lbl = label ? std::string(label) : m->label;
        std::string text = matrix_file_json(mat, lbl);
        *out_json = dup_cstr(text);
        if (!*out_json) fail(errc::internal, "out of memory");
    });
}

int latdist_matrix_rows(const latdist_matrix* m) { return m ? m->m.rows() : 0; }

int latdist_matrix_cols(const latdist_matrix* m) { return m ? m->m.cols() : 0; }

latdist_status latdist_matrix_entry(const latdist_matrix* m, int row, int col,
                                    char** out_text) {
    return guarded([&] {
        const RatMatrix& mat = require_matrix(m);
        require_out(out_text);
        if (row < 0 || row >= mat.rows() || col < 0 || col >= mat.cols())
            fail(errc::bad_argument, "matrix index out of range");
        *out_text = dup_cstr(rat_str(mat(row, col)));
        if (!*out_text) fail(errc::internal, "out of memory");
    });
}

const char* latdist_matrix_label(const latdist_matrix* m) {
    return m ? m->label.c_str() : "";
}

latdist_status latdist_reduce(const latdist_matrix* in, const char* algo, const char* delta,
                              const char* eps, int k, uint64_t budget,
                              latdist_matrix** out_basis, char** out_report) {
    return guarded([&] {
        const RatMatrix& basis = require_matrix(in);
        require_out(out_basis);
        require_out(out_report);
        if (!algo) fail(errc::bad_argument, "missing algo");
        const std::string name = algo;
        const Rat delta_v = delta ? parse_rat(delta) : Rat(3, 4);
        const Rat eps_v = eps ? parse_rat(eps) : Rat(1, 10);

        ReducedBasis rb;
        if (name == "size")
            rb = size_reduce(basis);
        else if (name == "lll")
            rb = lll_reduce(basis, delta_v);
        else if (name == "hkz")
            rb = hkz_reduce(basis, budget);
        else if (name == "dsvp")
            rb = dsvp_reduce(basis, eps_v, budget);
        else if (name == "slide")
            rb = slide_reduce(basis, k, eps_v, budget);
        else if (name == "padslide")
            rb = pad_and_slide(basis, k, budget);
        else if (name == "seysen")
            rb = seysen_reduce_basis(basis);
        else if (name == "pipeline")
            rb = reduced_basis_pipeline(basis, k, budget);
        else
            fail(errc::bad_argument, "unknown algo \"" + name + "\"");

        CertificateReport cert;
        if (rb.kind == ReduceKind::seysen)
            cert = check_seysen_certificate(rb);
        else if (rb.kind == ReduceKind::pipeline)
            cert = check_pipeline_certificate(rb, budget);
        else
            cert = check_certificate(rb, budget);

        json doc;
        doc["op"] = "reduce";
        doc["algo"] = name;
        json params;
        params["delta"] = name == "lll" ? json(rat_str(rb.delta)) : json(nullptr);
        params["eps"] = rb.epsilon != Rat(0) ? json(rat_str(rb.epsilon)) : json(nullptr);
        params["k"] = rb.block;
        doc["params"] = std::move(params);
        json stages = json::array();
        for (const ReducedBasis& st : rb.stages) stages.push_back(reduce_kind_name(st.kind));
        doc["stages"] = std::move(stages);
        json meas;
        meas["before"] = basis_measurements(basis);
        meas["after"] = basis_measurements(rb.basis);
        doc["measurements"] = std::move(meas);
        json cj;
        cj["ok"] = cert.ok;
        cj["detail"] = cert.detail;
        doc["certificate"] = std::move(cj);
        doc["transform"] = grid_json(rb.transform);
        doc["basis"] = grid_json(rb.basis);

        *out_basis = new latdist_matrix{rb.basis, name + "-reduced"};
        emit_report(doc, out_report);
    });
}

latdist_status latdist_distortion(const latdist_matrix* a, const latdist_matrix* b, int k,
                                  int with_lower, uint64_t budget, char** out_report) {
    return guarded([&] {
        const RatMatrix& b1 = require_matrix(a);
        const RatMatrix& b2 = require_matrix(b);
        require_out(out_report);
        LatticeHandle l1(b1);
        LatticeHandle l2(b2);
        DistortionCertificate cert = ldp_solve(l1, l2, k, budget);

        json doc;
        doc["op"] = "distortion";
        doc["k"] = k;
        doc["with_lower"] = with_lower != 0;
        doc["kappa"] = format_double(cert.upper_bound);
        if (!cert.mapping.empty()) {
            if (!verify_mapping(cert.mapping, l1, l2))
                fail(errc::violation, "mapping failed verification against both lattices");
            doc["mapping"] = grid_json(cert.mapping);
            doc["mapping_verified"] = true;
        } else {
            doc["mapping"] = nullptr;
            doc["mapping_verified"] = nullptr;
        }
        doc["witness"] = grid_json(cert.witness);
        doc["reduced_basis1"] = grid_json(cert.basis1);
        doc["reduced_basis2"] = grid_json(cert.basis2);
        doc["lower_bound_available"] = cert.has_lower_bound;
        if (with_lower != 0 && cert.has_lower_bound) {
            doc["lower_bound_sq"] = rat_str(cert.lower_bound_sq);
            doc["lower_bound"] = format_double(sqrt_double(cert.lower_bound_sq));
            doc["m12_sq"] = rat_str(cert.m12_sq);
            doc["m21_sq"] = rat_str(cert.m21_sq);
            if (!distortion_upper_bound_check(cert))
                fail(errc::violation, "certified bound chain failed re-verification");
            doc["sandwich_ok"] = true;
        } else {
            doc["lower_bound_sq"] = nullptr;
            doc["lower_bound"] = nullptr;
            doc["m12_sq"] = nullptr;
            doc["m21_sq"] = nullptr;
            doc["sandwich_ok"] = nullptr;
        }
        emit_report(doc, out_report);
    });
}

latdist_status latdist_decide(const latdist_matrix* a, const latdist_matrix* b, const char* c,
                              double gamma, int k, uint64_t budget, char** out_report) {
    return guarded([&] {
        const RatMatrix& b1 = require_matrix(a);
        const RatMatrix& b2 = require_matrix(b);
        require_out(out_report);
        if (!c) fail(errc::bad_argument, "missing c");
        LatticeHandle l1(b1);
        LatticeHandle l2(b2);
        GapDecision gd = gap_decide(l1, l2, parse_rat(c), gamma, k, budget);

        json doc;
        doc["op"] = "decide";
        doc["verdict"] = verdict_name(gd.verdict);
        doc["c"] = rat_str(gd.c);
        doc["gamma"] = format_double(gd.gamma);
        doc["k"] = k;
        doc["kappa"] = format_double(gd.evidence.upper_bound);
        if (gd.evidence.has_lower_bound) {
            doc["lower_bound_sq"] = rat_str(gd.evidence.lower_bound_sq);
            doc["lower_bound"] = format_double(sqrt_double(gd.evidence.lower_bound_sq));
        } else {
            doc["lower_bound_sq"] = nullptr;
            doc["lower_bound"] = nullptr;
        }
        if (gd.verdict == Verdict::unknown)
            doc["reason"] = gd.evidence.has_lower_bound ? "bounds inconclusive"
                                                        : "lower bound unavailable";
        else
            doc["reason"] = nullptr;
        emit_report(doc, out_report);
    });
}

latdist_status latdist_gadget_cvp2ldp(const latdist_matrix* basis, const char* const* target,
                                      int target_len, const char* d, int d_is_squared,
                                      double gamma, uint64_t budget, char** out_report) {
    return guarded([&] {
        const RatMatrix& b = require_matrix(basis);
        require_out(out_report);
        if (!d) fail(errc::bad_argument, "missing d");
        const Rat d_in = parse_rat(d);
        if (!(d_in > 0)) fail(errc::bad_argument, "d must be positive");
        const Rat d_sq = d_is_squared ? d_in : Rat(d_in * d_in);
        RatVec t = vec_from_strings(target, target_len);
        const double alpha = gamma > 0.0 ? 1.0 / gamma : 1.0;
        CvpAlphaInstance inst(LatticeHandle(b), std::move(t), d_sq, gamma, alpha);
        LdpGadget g = build_ldp_gadget(inst, budget);

        json doc;
        doc["op"] = "gadget";
        doc["kind"] = "cvp2ldp";
        json trace;
        trace["r"] = rat_str(g.r);
        trace["c"] = rat_str(g.c);
        trace["gamma"] = format_double(g.gamma);
        trace["d_sq"] = rat_str(g.d_sq);
        doc["trace"] = std::move(trace);
        json l1j;
        l1j["n"] = g.l1.dim();
        l1j["basis"] = grid_json(g.l1.basis());
        l1j["label"] = "cvp2ldp-l1";
        json l2j;
        l2j["n"] = g.l2.dim();
        l2j["basis"] = grid_json(g.l2.basis());
        l2j["label"] = "cvp2ldp-l2";
        doc["l1"] = std::move(l1j);
        doc["l2"] = std::move(l2j);
        emit_report(doc, out_report);
    });
}

latdist_status latdist_gadget_svp2cvp(const latdist_matrix* basis, const char* d, double gamma,
                                      char** out_report) {
    return guarded([&] {
        const RatMatrix& b = require_matrix(basis);
        require_out(out_report);
        if (!d) fail(errc::bad_argument, "missing d");
        const Rat d_v = parse_rat(d);
        if (!(d_v > 0)) fail(errc::bad_argument, "d must be positive");
        LatticeHandle l(b);
        SvpToCvpBatch batch = build_svp_to_cvp_batch(l, d_v, gamma);

        json doc;
        doc["op"] = "gadget";
        doc["kind"] = "svp2cvp";
        json trace;
        trace["p"] = batch.trace.p.get_str();
        trace["r"] = rat_str(batch.trace.r);
        trace["gamma"] = format_double(batch.trace.gamma);
        trace["gamma_prime"] = rat_str(batch.trace.gamma_prime);
        trace["d"] = rat_str(batch.trace.d);
        trace["d_prime_sq"] = rat_str(batch.trace.d_prime_sq);
        trace["count"] = batch.instances.size();
        doc["trace"] = std::move(trace);

        const std::size_t per_dir = batch.trace.p.fits_slong_p()
                                        ? static_cast<std::size_t>(batch.trace.p.get_si() - 1)
                                        : 0;
        json instances = json::array();
        for (std::size_t idx = 0; idx < batch.instances.size(); ++idx) {
            const std::size_t i = per_dir ? idx / per_dir : 0;
            const std::size_t j = per_dir ? idx % per_dir + 1 : 0;
            std::string label =
                "svp2cvp-i" + std::to_string(i) + "-j" + std::to_string(j);
            json inst = instance_json(batch.instances[idx], label);
            inst["i"] = i;
            inst["j"] = j;
            instances.push_back(std::move(inst));
        }
        doc["instances"] = std::move(instances);
        emit_report(doc, out_report);
    });
}

latdist_status latdist_luk_tracy(int n, latdist_matrix** out) {
    return guarded([&] {
        require_out(out);
        if (n < 1) fail(errc::bad_argument, "n must be at least 1");
        *out = new latdist_matrix{luk_tracy(n), "luk-tracy-" + std::to_string(n)};
    });
}

latdist_status latdist_random_lattice(int n, int entry_bound, uint64_t seed,
                                      latdist_matrix** out) {
    return guarded([&] {
        require_out(out);
        LatticeHandle l = random_integer_lattice(n, entry_bound, seed);
        *out = new latdist_matrix{l.basis(),
                                  "random-" + std::to_string(n) + "-seed" +
                                      std::to_string(seed)};
    });
}

latdist_status latdist_oracle(const latdist_matrix* basis, const char* op,
                              const char* const* target, int target_len, uint64_t budget,
                              char** out_report) {
    return guarded([&] {
        const RatMatrix& b = require_matrix(basis);
        require_out(out_report);
        if (!op) fail(errc::bad_argument, "missing oracle op");
        const std::string name = op;
        LatticeHandle l(b);

        json doc;
        doc["op"] = "oracle";
        doc["oracle"] = name;
        if (name == "svp") {
            ShortestResult r = shortest_vector(l, budget);
            doc["norm_sq"] = rat_str(r.norm_sq);
            doc["norm"] = format_double(sqrt_double(r.norm_sq));
            doc["coeffs"] = int_vec_json(r.coeffs);
            doc["vector"] = vec_json(r.vector);
        } else if (name == "cvp") {
            RatVec t = vec_from_strings(target, target_len);
            if (static_cast<int>(t.size()) != l.ambient())
                fail(errc::bad_argument, "target length must match the ambient dimension");
            ClosestResult r = closest_vector(l, t, budget);
            doc["target"] = vec_json(t);
            doc["dist_sq"] = rat_str(r.dist_sq);
            doc["dist"] = format_double(sqrt_double(r.dist_sq));
            doc["coeffs"] = int_vec_json(r.coeffs);
            doc["vector"] = vec_json(r.vector);
        } else if (name == "minima") {
            SuccessiveMinima r = successive_minima(l, budget);
            json vals = json::array();
            for (const Rat& v : r.lambda_sq) vals.push_back(rat_str(v));
            doc["lambda_sq"] = std::move(vals);
            doc["witnesses"] = grid_json(r.witnesses);
        } else if (name == "transference") {
            TransferenceReport r = transference_check(l, budget);
            doc["ok"] = r.ok;
            json vals = json::array();
            for (const Rat& v : r.products_sq) vals.push_back(rat_str(v));
            doc["products_sq"] = std::move(vals);
            doc["violating_index"] = r.violating_index;
        } else {
            fail(errc::bad_argument, "unknown oracle op \"" + name + "\"");
        }
        emit_report(doc, out_report);
    });
}

latdist_status latdist_bench(const char* suite, int n_min, int n_max, int trials,
                             uint64_t seed, int has_seed, uint64_t budget,
                             char** out_report) {
    return guarded([&] {
        require_out(out_report);
        if (!suite) fail(errc::bad_argument, "missing suite");
        const std::string name = suite;
        if (n_min < 2) fail(errc::bad_argument, "n_min must be at least 2");
        if (n_max < n_min) fail(errc::bad_argument, "n_max must be at least n_min");
        if (trials < 1) fail(errc::bad_argument, "trials must be at least 1");
        const bool randomized =
            name == "seysen-zeta" || name == "transference" || name == "sandwich";
        if (randomized && !has_seed)
            fail(errc::bad_argument, "suite \"" + name + "\" requires an explicit seed");

        json doc;
        doc["op"] = "bench";
        doc["suite"] = name;
        doc["n_min"] = n_min;
        doc["n_max"] = n_max;
        int violations = 0;
        if (name == "luktracy-growth") {
            doc["rows"] = bench_luktracy_growth(n_min, n_max, budget);
            doc["summary"] = "condition number before and after the block pipeline";
        } else if (name == "seysen-zeta") {
            doc["trials"] = trials;
            doc["seed"] = seed;
            doc["rows"] = bench_seysen_zeta(n_min, n_max, trials, seed);
            doc["summary"] = "worst S' of conditioned random unipotent matrices";
        } else if (name == "transference") {
            doc["trials"] = trials;
            doc["seed"] = seed;
            doc["rows"] = bench_transference(n_min, n_max, trials, seed, budget, &violations);
            doc["violations"] = violations;
            doc["summary"] = violations == 0 ? "all products within [1, n^2]"
                                             : "transference violations found";
        } else if (name == "sandwich") {
            doc["trials"] = trials;
            doc["seed"] = seed;
            doc["rows"] = bench_sandwich(n_min, n_max, trials, seed, budget, &violations);
            doc["violations"] = violations;
            doc["summary"] = violations == 0 ? "upper bound within the certified sandwich"
                                             : "sandwich violations found";
        } else {
            fail(errc::bad_argument, "unknown suite \"" + name + "\"");
        }
        emit_report(doc, out_report);
    });
}

}  // extern "C"
