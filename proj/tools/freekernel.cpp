// Command-line frontend: JSON in, one-line JSON report out.
//
// Exit codes: 0 ok, 1 validation/verification failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "freekernel/displacement.hpp"
#include "freekernel/dyck.hpp"
#include "freekernel/invariant.hpp"
#include "freekernel/json_io.hpp"
#include "freekernel/kmatrix.hpp"
#include "freekernel/markov.hpp"
#include "freekernel/orthpoly1.hpp"
#include "freekernel/schur.hpp"

using namespace freekernel;
using json_io::json;
using kmatrix::cplx;
using kmatrix::Matrix;

namespace {

// fixed 12-significant-digit formatting keeps reports byte-stable
double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

struct Report {
    std::string command;
    bool ok = true;
    json metrics = json::object();
    std::vector<std::string> artifacts;
    json extra = json::object();

    void metric(const std::string& key, double value) { metrics[key] = round12(value); }
    void metric_int(const std::string& key, std::int64_t value) { metrics[key] = value; }

    int emit() const {
        json j;
        j["command"] = command;
        j["status"] = ok ? "ok" : "fail";
        j["metrics"] = metrics;
        j["artifacts"] = artifacts;
        for (const auto& [k, v] : extra.items()) j[k] = v;
        std::cout << j.dump() << '\n';
        return ok ? 0 : 1;
    }
};

std::uint64_t env_seed() {
    if (const char* s = std::getenv("FREEKERNEL_SEED")) return std::strtoull(s, nullptr, 10);
    return 12345;
}

Matrix random_spd(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cplx(u(rng), u(rng));
    Matrix K = (M.adjoint() * M) / static_cast<double>(n) + 0.5 * Matrix::Identity(n, n);
    return (K + K.adjoint()) / 2.0;
}

std::vector<double> kernel_diag(const kmatrix::KernelMatrix& K) {
    std::vector<double> d(static_cast<std::size_t>(K.size()));
    for (Eigen::Index i = 0; i < K.size(); ++i) d[static_cast<std::size_t>(i)] =
        K.entries(i, i).real();
    return d;
}

std::string word_text(const words::Word& w) {
    return json_io::word_to_json(w).dump();
}

json matrix_to_json(const Matrix& M) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            rrow.push_back(M(i, j).real());
            irow.push_back(M(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

int run_pd_check(const std::string& path, std::optional<double> tol) {
    const auto K = json_io::kernel_from_json(json_io::load_json(path));
    const auto rep = tol ? kmatrix::definiteness(K, *tol) : kmatrix::definiteness(K);
    Report r;
    r.command = "pd-check";
    r.metric("min_pivot", rep.min_pivot);
    r.metric_int("size", K.size());
    r.extra["classification"] = kmatrix::to_string(rep.classification);
    r.ok = rep.classification != kmatrix::Definiteness::indefinite;
    return r.emit();
}

int run_schur_extract(const std::string& path, const std::string& out) {
    const auto K = json_io::kernel_from_json(json_io::load_json(path));
    const auto params = schur::extract(K);
    Report r;
    r.command = "schur extract";
    r.metric_int("n", params.size());
    r.metric_int("degenerate", static_cast<std::int64_t>(params.degenerate_pairs().size()));
    if (!out.empty()) {
        json_io::save_json(out, json_io::params_to_json(params));
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_schur_reconstruct(const std::string& path, const std::string& out) {
    const auto params = json_io::params_from_json(json_io::load_json(path));
    const auto K = schur::reconstruct(params);
    Report r;
    r.command = "schur reconstruct";
    r.metric_int("size", K.size());
    r.metric("min_pivot", kmatrix::definiteness(K).min_pivot);
    if (!out.empty()) {
        json_io::save_json(out, json_io::kernel_to_json(K, std::nullopt));
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_schur_roundtrip(const std::string& path, int random_size, double tol) {
    kmatrix::KernelMatrix K = random_size > 0
                                  ? kmatrix::build_kernel(random_spd(env_seed(), random_size))
                                  : json_io::kernel_from_json(json_io::load_json(path));
    const auto params = schur::extract(K);
    const auto back = schur::reconstruct(params, kernel_diag(K));
    const double err = (back.entries - K.entries).cwiseAbs().maxCoeff();
    Report r;
    r.command = "schur roundtrip";
    r.metric("max_error", err);
    r.metric_int("size", K.size());
    r.ok = err < tol;
    return r.emit();
}

int run_dyck_count(int k) {
    Report r;
    r.command = "dyck count";
    r.metric_int("catalan", static_cast<std::int64_t>(dyck::catalan(k)));
    return r.emit();
}

int run_dyck_enumerate(int k, const std::string& out) {
    const auto paths = dyck::enumerate_dyck(k);
    Report r;
    r.command = "dyck enumerate";
    r.metric_int("count", static_cast<std::int64_t>(paths.size()));
    if (!out.empty()) {
        json jp = json::array();
        for (const auto& p : paths) jp.push_back(p);
        json_io::save_json(out, json{{"k", k}, {"paths", std::move(jp)}});
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_dyck_sum(const std::string& path, int l, int m, bool serial, double tol) {
    const auto params = json_io::params_from_json(json_io::load_json(path));
    const cplx sum = serial ? dyck::kernel_by_dyck_sum_serial(params, l, m)
                            : dyck::kernel_by_dyck_sum(params, l, m);
    const cplx line = schur::reconstruct_entry(params, l, m);
    Report r;
    r.command = "dyck sum";
    r.metric("sum_re", sum.real());
    r.metric("sum_im", sum.imag());
    r.metric_int("paths", static_cast<std::int64_t>(dyck::catalan(m - l)));
    r.metric("line_deviation", std::abs(sum - line));
    r.ok = std::abs(sum - line) < tol;
    return r.emit();
}

int run_dyck_seismic(int n) {
    Report r;
    r.command = "dyck seismic";
    const auto count = dyck::seismic_count(n);
    r.metric_int("catalan", static_cast<std::int64_t>(count));
    if (n <= 12) {
        const auto enumerated = dyck::seismic_count_enumerated(n);
        r.metric_int("enumerated", static_cast<std::int64_t>(enumerated));
        r.ok = enumerated == count;
    }
    return r.emit();
}

// factors may carry arbitrary labels; the glue operates on the canonical
// intervals {0..n} and {-m..0}, so relabel positionally
kmatrix::KernelMatrix as_interval(const kmatrix::KernelMatrix& K, std::int64_t lo) {
    std::vector<kmatrix::Label> labels;
    for (Eigen::Index i = 0; i < K.size(); ++i) labels.emplace_back(lo + i);
    return kmatrix::KernelMatrix{std::move(labels), K.entries};
}

int run_markov_product(const std::string& left, const std::string& right,
                       const std::string& out) {
    const auto K1 = as_interval(json_io::kernel_from_json(json_io::load_json(right)), 0);
    const auto raw2 = json_io::kernel_from_json(json_io::load_json(left));
    const auto K2 = as_interval(raw2, 1 - raw2.size());
    const auto glued = markov::markov_product(K1, K2);
    Report r;
    r.command = "markov product";
    r.metric_int("size", glued.product.size());
    r.metric("min_pivot", kmatrix::definiteness(glued.product).min_pivot);
    if (!out.empty()) {
        json_io::save_json(out, json_io::kernel_to_json(glued.product, std::nullopt));
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_markov_verify(const std::string& left, const std::string& right, double tol) {
    const auto K1 = as_interval(json_io::kernel_from_json(json_io::load_json(right)), 0);
    const auto raw2 = json_io::kernel_from_json(json_io::load_json(left));
    const auto K2 = as_interval(raw2, 1 - raw2.size());
    const auto rep = markov::verify_markov_parameters(K1, K2);
    Report r;
    r.command = "markov verify";
    r.metric("max_left_deviation", rep.max_left_deviation);
    r.metric("max_right_deviation", rep.max_right_deviation);
    r.metric("max_cross_magnitude", rep.max_cross_magnitude);
    r.metric("max_deviation", rep.max_deviation);
    r.ok = rep.max_deviation < tol;
    return r.emit();
}

int run_invariant_gen(const std::string& tlist, int depth, const std::string& out) {
    const invariant::ContractionTuple t(json_io::parse_complex_list(tlist));
    const auto K = invariant::t_kernel(t, depth);
    const auto pd = kmatrix::definiteness(K);
    const auto inv = kmatrix::check_invariance(K, t.n_letters());
    Report r;
    r.command = "invariant gen";
    r.metric_int("size", K.size());
    r.metric("min_pivot", pd.min_pivot);
    r.metric("max_violation", inv.max_violation);
    r.ok = pd.classification == kmatrix::Definiteness::strictly_positive && inv.invariant;
    if (!out.empty()) {
        json_io::save_json(out, json_io::kernel_to_json(K, t.n_letters()));
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_invariant_verify(const std::string& path, std::optional<int> N_flag) {
    const auto doc = json_io::load_json(path);
    const auto K = json_io::kernel_from_json(doc);
    const auto N_file = json_io::kernel_alphabet(doc);
    const int N = N_flag ? *N_flag : (N_file ? *N_file : 0);
    if (N < 1) throw std::invalid_argument("invariant verify: alphabet size unknown, pass --N");
    const auto pd = kmatrix::definiteness(K);
    const auto inv = kmatrix::check_invariance(K, N);
    Report r;
    r.command = "invariant verify";
    r.metric("min_pivot", pd.min_pivot);
    r.metric("max_violation", inv.max_violation);
    r.extra["classification"] = kmatrix::to_string(pd.classification);
    if (!inv.invariant)
        r.extra["violating_triple"] = json::array(
            {word_text(inv.tau), word_text(inv.sigma), word_text(inv.sigma_prime)});
    r.ok = inv.invariant && pd.classification != kmatrix::Definiteness::indefinite;
    return r.emit();
}

int run_invariant_polys(const std::string& tlist, int depth, const std::string& out) {
    const invariant::ContractionTuple t(json_io::parse_complex_list(tlist));
    const auto polys = invariant::orthonormal_polys(t, depth);
    const auto basis = words::enumerate(t.n_letters(), depth);
    const Matrix rows = invariant::coefficient_rows(polys, basis);
    const auto K = invariant::t_kernel(t, depth);
    const double gram = (rows * K.entries * rows.adjoint() -
                         Matrix::Identity(K.size(), K.size()))
                            .cwiseAbs()
                            .maxCoeff();
    Report r;
    r.command = "invariant polys";
    r.metric_int("count", static_cast<std::int64_t>(polys.size()));
    r.metric("gram_residual", gram);
    r.ok = gram < 1e-10;
    if (!out.empty()) {
        json jp = json::array();
        for (const auto& [w, poly] : polys) {
            json terms = json::array();
            for (const auto& [mono, coeff] : poly)
                terms.push_back(json{{"word", json_io::word_to_json(mono)},
                                     {"re", coeff.real()},
                                     {"im", coeff.imag()}});
            jp.push_back(json{{"word", json_io::word_to_json(w)}, {"terms", std::move(terms)}});
        }
        json_io::save_json(out, json{{"polys", std::move(jp)}});
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_invariant_freeprod(const std::string& c1path, const std::string& c2path, int depth,
                           const std::string& out) {
    const auto c1 = json_io::moments_from_json(json_io::load_json(c1path));
    const auto c2 = json_io::moments_from_json(json_io::load_json(c2path));
    const auto K = invariant::free_product_kernel(c1, c2, depth);
    const auto pd = kmatrix::definiteness(K);
    const auto inv = kmatrix::check_invariance(K, 2);
    const double norm = K.entries.cwiseAbs().maxCoeff();
    Report r;
    r.command = "invariant freeprod";
    r.metric_int("size", K.size());
    r.metric("min_pivot", pd.min_pivot);
    r.metric("max_violation", inv.max_violation);
    r.ok = pd.min_pivot > -1e-9 * norm && inv.invariant;
    if (!out.empty()) {
        json_io::save_json(out, json_io::kernel_to_json(K, 2));
        r.artifacts.push_back(out);
    }
    return r.emit();
}

int run_orthpoly(const std::string& path, int max_n, const std::string& format,
                 const std::string& out) {
    const auto s = json_io::kernel_from_json(json_io::load_json(path));
    const auto table = orthpoly1::recurrence_polys(s);
    const int M = std::min<int>(max_n, table.max_index());
    // orthonormality residual over every shifted slice up to M; the Gram
    // form holds for the conjugated coefficient rows
    double residual = 0.0;
    for (int l = 0; l + 0 <= table.max_index(); ++l) {
        const int count = std::min(M, table.max_index() - l) + 1;
        Matrix B = Matrix::Zero(count, count);
        for (int n = 0; n < count; ++n)
            for (int k = 0; k <= n; ++k)
                B(n, k) = std::conj(table.phi(n, l)[static_cast<std::size_t>(k)]);
        const Matrix R = s.entries.block(l, l, count, count);
        residual = std::max(residual,
                            (B * R * B.adjoint() - Matrix::Identity(count, count))
                                .cwiseAbs()
                                .maxCoeff());
    }
    json jtable = json::array();
    std::string text;
    for (int n = 0; n <= M; ++n) {
        for (int l = 0; n + l <= table.max_index(); ++l) {
            const auto& a = table.phi(n, l);
            const auto& b = table.phi_sharp(n, l);
            json ja = json::array(), jb = json::array();
            char line[160];
            std::snprintf(line, sizeof line, "phi(n=%d,l=%d):", n, l);
            text += line;
            for (int k = 0; k <= n; ++k) {
                ja.push_back({round12(a[static_cast<std::size_t>(k)].real()),
                              round12(a[static_cast<std::size_t>(k)].imag())});
                jb.push_back({round12(b[static_cast<std::size_t>(k)].real()),
                              round12(b[static_cast<std::size_t>(k)].imag())});
                std::snprintf(line, sizeof line, " %+.12g%+.12gi",
                              a[static_cast<std::size_t>(k)].real(),
                              a[static_cast<std::size_t>(k)].imag());
                text += line;
            }
            text += '\n';
            jtable.push_back(json{{"n", n}, {"l", l}, {"phi", std::move(ja)},
                                  {"phiSharp", std::move(jb)}});
        }
    }
    Report r;
    r.command = "orthpoly";
    r.metric("orthonormality_residual", residual);
    r.ok = residual < 1e-9;
    if (!out.empty()) {
        if (format == "table") {
            std::ofstream f(out);
            f << text;
        } else {
            json_io::save_json(out, json{{"table", std::move(jtable)}});
        }
        r.artifacts.push_back(out);
    } else if (format == "table") {
        std::cout << text;
    } else {
        std::cout << json{{"table", std::move(jtable)}}.dump() << '\n';
    }
    return r.emit();
}

int run_disp_forward(const std::string& path, int n, int t, double tol) {
    const auto s = json_io::kernel_from_json(json_io::load_json(path));
    const double residual = displacement::residual_forward_n1(s, n, t);
    Report r;
    r.command = "disp forward";
    r.metric("residual", residual);
    r.ok = residual < tol;
    return r.emit();
}

int run_disp_inverse(const std::string& path, int n, int t, double tol) {
    const auto s = json_io::kernel_from_json(json_io::load_json(path));
    const auto rep = displacement::inverse_displacement_n1(s, n, t);
    Report r;
    r.command = "disp inverse";
    r.metric("residual", rep.residual_inverse);
    r.metric("residual_cross", rep.residual_cross);
    r.metric("residual_j", rep.residual_j);
    r.ok = rep.residual_inverse < tol && rep.residual_cross < tol && rep.residual_j < tol;
    return r.emit();
}

int run_disp_invariant(const std::string& path, std::optional<int> N_flag, bool diagonalize,
                       const std::string& out, double tol) {
    const auto doc = json_io::load_json(path);
    const auto K = json_io::kernel_from_json(doc);
    const auto N_file = json_io::kernel_alphabet(doc);
    const int N = N_flag ? *N_flag : (N_file ? *N_file : 0);
    if (N < 1) throw std::invalid_argument("disp invariant: alphabet size unknown, pass --N");
    Report r;
    r.command = "disp invariant";
    const auto inv = kmatrix::check_invariance(K, N);
    if (!inv.invariant) {
        r.metric("max_violation", inv.max_violation);
        r.extra["violating_triple"] = json::array(
            {word_text(inv.tau), word_text(inv.sigma), word_text(inv.sigma_prime)});
        r.ok = false;
        return r.emit();
    }
    const auto fact = displacement::invariant_factorization(K, N);
    r.metric("residual", fact.residual_displacement);
    r.metric("residual_q", fact.residual_q);
    r.metric_int("J_dim", fact.j_dim);
    json artifact{{"residual", round12(fact.residual_displacement)},
                  {"J_dim", fact.j_dim},
                  {"G", matrix_to_json(fact.G)},
                  {"J", matrix_to_json(fact.J)}};
    if (diagonalize) {
        const auto d = displacement::diagonalize_symmetry(fact.J);
        r.metric_int("p_n", d.positive);
        artifact["p_n"] = d.positive;
        artifact["W"] = matrix_to_json(d.W);
    }
    r.ok = fact.residual_displacement < tol && fact.residual_q < tol;
    if (!out.empty()) {
        json_io::save_json(out, artifact);
        r.artifacts.push_back(out);
    }
    return r.emit();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positive definite kernels on the free semigroup: Schur parameters, "
                 "Dyck-path sums, Markov products, invariant kernels, displacement equations"};
    app.require_subcommand(1);

    double tol_forward = 1e-10, tol_inverse = 1e-9, tol_roundtrip = 1e-9, tol_sum = 1e-9,
           tol_markov = 1e-8;
    std::optional<double> tol_pd;

    // pd-check
    std::string pd_kernel;
    auto* pd = app.add_subcommand("pd-check", "classify a kernel by pivoted Cholesky");
    pd->add_option("--kernel", pd_kernel, "kernel JSON file")->required();
    double pd_tol_val = 0.0;
    auto* pd_tol_opt = pd->add_option("--tol", pd_tol_val, "pivot threshold override");

    // schur
    auto* sc = app.add_subcommand("schur", "Schur parameter parametrization");
    sc->require_subcommand(1);
    std::string sc_kernel, sc_params, sc_out;
    int sc_random = 0;
    auto* sc_ex = sc->add_subcommand("extract", "kernel -> parameter table");
    sc_ex->add_option("--kernel", sc_kernel, "kernel JSON file")->required();
    sc_ex->add_option("-o,--output", sc_out, "parameter JSON output");
    auto* sc_re = sc->add_subcommand("reconstruct", "parameter table -> unit-diagonal kernel");
    sc_re->add_option("--params", sc_params, "parameter JSON file")->required();
    sc_re->add_option("-o,--output", sc_out, "kernel JSON output");
    auto* sc_rt = sc->add_subcommand("roundtrip", "extract then reconstruct, report max error");
    sc_rt->add_option("--kernel", sc_kernel, "kernel JSON file");
    sc_rt->add_option("--random", sc_random, "use a random PD kernel of this size instead");
    sc_rt->add_option("--tol", tol_roundtrip, "pass threshold (default 1e-9)");

    // dyck
    auto* dy = app.add_subcommand("dyck", "Dyck path combinatorics and cumulant sums");
    dy->require_subcommand(1);
    int dy_k = 0, dy_l = 0, dy_m = 0, dy_n = 0;
    std::string dy_params, dy_out;
    bool dy_serial = false;
    auto* dy_count = dy->add_subcommand("count", "Catalan number C_k");
    dy_count->add_option("--k", dy_k, "half-length")->required();
    auto* dy_enum = dy->add_subcommand("enumerate", "all Dyck paths of length 2k");
    dy_enum->add_option("--k", dy_k, "half-length")->required();
    dy_enum->add_option("-o,--output", dy_out, "paths JSON output");
    auto* dy_sum = dy->add_subcommand("sum", "cumulant sum over Dyck paths");
    dy_sum->add_option("--params", dy_params, "parameter JSON file")->required();
    dy_sum->add_option("--l", dy_l, "left index")->required();
    dy_sum->add_option("--m", dy_m, "right index")->required();
    dy_sum->add_flag("--serial", dy_serial, "use the serial reference implementation");
    dy_sum->add_option("--tol", tol_sum, "transmission-line agreement threshold");
    auto* dy_seis = dy->add_subcommand("seismic", "layered-medium trajectory count");
    dy_seis->add_option("--n", dy_n, "half return time")->required();

    // markov
    auto* mk = app.add_subcommand("markov", "Markov products of kernels glued at a point");
    mk->require_subcommand(1);
    std::string mk_left, mk_right, mk_out;
    auto* mk_prod = mk->add_subcommand("product", "glue two kernels at the common point 0");
    mk_prod->add_option("--left", mk_left, "kernel on {-m..0}")->required();
    mk_prod->add_option("--right", mk_right, "kernel on {0..n}")->required();
    mk_prod->add_option("-o,--output", mk_out, "product kernel output");
    auto* mk_ver = mk->add_subcommand("verify", "check the parameter block structure");
    mk_ver->add_option("--left", mk_left, "kernel on {-m..0}")->required();
    mk_ver->add_option("--right", mk_right, "kernel on {0..n}")->required();
    mk_ver->add_option("--tol", tol_markov, "pass threshold (default 1e-8)");

    // invariant
    auto* iv = app.add_subcommand("invariant", "invariant kernel constructions");
    iv->require_subcommand(1);
    std::string iv_t, iv_kernel, iv_out, iv_c1, iv_c2;
    int iv_depth = 2;
    std::optional<int> iv_N;
    auto* iv_gen = iv->add_subcommand("gen", "contraction-tuple kernel");
    iv_gen->add_option("--t", iv_t, "comma-separated contractions, e.g. \"0.3,0.5i\"")->required();
    iv_gen->add_option("--depth", iv_depth, "maximum word length")->required();
    iv_gen->add_option("-o,--output", iv_out, "kernel JSON output");
    auto* iv_ver = iv->add_subcommand("verify", "positivity + invariance of a kernel file");
    iv_ver->add_option("kernel", iv_kernel, "kernel JSON file")->required();
    iv_ver->add_option("--N", iv_N, "alphabet size (defaults to the file's N)");
    auto* iv_polys = iv->add_subcommand("polys", "closed-form orthonormal polynomials");
    iv_polys->add_option("--t", iv_t, "comma-separated contractions")->required();
    iv_polys->add_option("--depth", iv_depth, "maximum word length")->required();
    iv_polys->add_option("-o,--output", iv_out, "polynomial JSON output");
    auto* iv_fp = iv->add_subcommand("freeprod", "free product of two N=1 moment functionals");
    iv_fp->add_option("--c1", iv_c1, "first moment JSON file")->required();
    iv_fp->add_option("--c2", iv_c2, "second moment JSON file")->required();
    iv_fp->add_option("--depth", iv_depth, "maximum word length")->required();
    iv_fp->add_option("-o,--output", iv_out, "kernel JSON output");

    // orthpoly
    std::string op_moments, op_format = "table", op_out;
    int op_max_n = 5;
    auto* op = app.add_subcommand("orthpoly", "shifted orthonormal polynomial tables (N=1)");
    op->add_option("--moments", op_moments, "moment kernel JSON file")->required();
    op->add_option("--max-n", op_max_n, "largest polynomial degree");
    op->add_option("--format", op_format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));
    op->add_option("-o,--output", op_out, "write the table to a file");

    // disp
    auto* dp = app.add_subcommand("disp", "displacement equations");
    dp->require_subcommand(1);
    std::string dp_moments, dp_kernel, dp_out;
    int dp_n = 0, dp_t = 0;
    std::optional<int> dp_N;
    bool dp_diag = false;
    auto* dp_fwd = dp->add_subcommand("forward", "N=1 forward equation residual");
    dp_fwd->add_option("--moments", dp_moments, "moment kernel JSON file")->required();
    dp_fwd->add_option("--n", dp_n, "window size")->required();
    dp_fwd->add_option("--t", dp_t, "window offset");
    dp_fwd->add_option("--tol", tol_forward, "pass threshold (default 1e-10)");
    auto* dp_inv = dp->add_subcommand("inverse", "inverse equation and proof identities");
    dp_inv->add_option("--moments", dp_moments, "moment kernel JSON file")->required();
    dp_inv->add_option("--n", dp_n, "window size")->required();
    dp_inv->add_option("--t", dp_t, "window offset");
    dp_inv->add_option("--tol", tol_inverse, "pass threshold (default 1e-9)");
    auto* dp_ik = dp->add_subcommand("invariant", "invariant-kernel equation and factorization");
    dp_ik->add_option("--kernel", dp_kernel, "kernel JSON file")->required();
    dp_ik->add_option("--N", dp_N, "alphabet size (defaults to the file's N)");
    dp_ik->add_flag("--diagonalize", dp_diag, "also diagonalize the symmetry");
    dp_ik->add_option("-o,--output", dp_out, "factorization JSON output");
    dp_ik->add_option("--tol", tol_forward, "pass threshold (default 1e-10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (pd->parsed()) return run_pd_check(pd_kernel, pd_tol_opt->count() ? std::optional<double>(pd_tol_val) : std::nullopt);
        if (sc_ex->parsed()) return run_schur_extract(sc_kernel, sc_out);
        if (sc_re->parsed()) return run_schur_reconstruct(sc_params, sc_out);
        if (sc_rt->parsed()) {
            if (sc_kernel.empty() && sc_random <= 0)
                throw std::invalid_argument("schur roundtrip: pass --kernel or --random SIZE");
            return run_schur_roundtrip(sc_kernel, sc_random, tol_roundtrip);
        }
        if (dy_count->parsed()) return run_dyck_count(dy_k);
        if (dy_enum->parsed()) return run_dyck_enumerate(dy_k, dy_out);
        if (dy_sum->parsed()) return run_dyck_sum(dy_params, dy_l, dy_m, dy_serial, tol_sum);
        if (dy_seis->parsed()) return run_dyck_seismic(dy_n);
        if (mk_prod->parsed()) return run_markov_product(mk_left, mk_right, mk_out);
        if (mk_ver->parsed()) return run_markov_verify(mk_left, mk_right, tol_markov);
        if (iv_gen->parsed()) return run_invariant_gen(iv_t, iv_depth, iv_out);
        if (iv_ver->parsed()) return run_invariant_verify(iv_kernel, iv_N);
        if (iv_polys->parsed()) return run_invariant_polys(iv_t, iv_depth, iv_out);
        if (iv_fp->parsed()) return run_invariant_freeprod(iv_c1, iv_c2, iv_depth, iv_out);
        if (op->parsed()) return run_orthpoly(op_moments, op_max_n, op_format, op_out);
        if (dp_fwd->parsed()) return run_disp_forward(dp_moments, dp_n, dp_t, tol_forward);
        if (dp_inv->parsed()) return run_disp_inverse(dp_moments, dp_n, dp_t, tol_inverse);
        if (dp_ik->parsed()) return run_disp_invariant(dp_kernel, dp_N, dp_diag, dp_out, tol_forward);
    } catch (const std::exception& e) {
        json j;
        j["command"] = "error";
        j["status"] = "fail";
        j["error"] = e.what();
        std::cout << j.dump() << '\n';
        return 1;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
