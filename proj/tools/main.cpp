#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "semnorm/gcdpoly.hpp"
#include "semnorm/jsonio.hpp"
#include "semnorm/polytext.hpp"
#include "semnorm/seminormal.hpp"

namespace {

using nlohmann::json;
using namespace semnorm;

constexpr int kExitOk = 0;
constexpr int kExitObstructed = 2;
constexpr int kExitValidation = 3;
constexpr int kExitResource = 4;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    return j;
}

void emit(const json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw validation_error("cannot write file: " + out_path);
        out << text;
    }
}

struct Options {
    std::string ring_file;
    std::string matrix_file;
    std::string out_file;
    bool trace = false;
    size_t leaf_cap = 4096;
};

RingPtr load_ring(const Options& opt) {
    if (opt.ring_file.empty()) throw validation_error("this command needs --ring FILE");
    return ring_from_json(load_json(opt.ring_file));
}

SquareMatrix load_matrix(const Options& opt, RingPtr override_ring = nullptr) {
    if (opt.matrix_file.empty()) throw validation_error("this command needs --matrix FILE");
    return matrix_from_json(load_json(opt.matrix_file), std::move(override_ring));
}

int cmd_check(const Options& opt) {
    SquareMatrix m = load_matrix(opt);
    std::cout << "ring: " << m.coeff_ring()->name() << "\n";
    std::cout << "n: " << m.n() << "\n";
    bool idem = check_idempotent(m);
    std::cout << "idempotent: " << (idem ? "yes" : "no") << "\n";
    std::cout << "trace: " << poly_to_string(mat_trace(m)) << "\n";
    if (idem) std::cout << "rank polynomial: " << poly_to_string(rank_polynomial(m)) << "\n";
    try {
        Rank1Certificate cert = certify_rank1(m);
        std::cout << "rank-1: certified (" << cert.minors_checked << " minors checked)\n";
    } catch (const rank1_error& e) {
        std::cout << "rank-1: no (" << e.what() << ")\n";
    }
    return kExitOk;
}

int cmd_factor(const Options& opt) {
    RingPtr ring = load_ring(opt);
    SquareMatrix m = load_matrix(opt, ring);
    FactorizationResult res = factor_rank1_seminormal(ring, certify_rank1(m));
    if (opt.trace)
        for (const auto& line : res.trace) std::cout << "# " << line << "\n";
    emit(result_to_json(res), opt.out_file);
    return res.factored ? kExitOk : kExitObstructed;
}

int cmd_schanuel(const Options& opt, const std::string& semigroup, const std::string& var,
                 const std::string& a_str, const std::string& b_str, const std::string& c_str) {
    SquareMatrix m = [&] {
        if (!semigroup.empty()) {
            std::vector<unsigned> gens;
            size_t pos = 0;
            while (pos < semigroup.size()) {
                size_t comma = semigroup.find(',', pos);
                std::string tok = semigroup.substr(pos, comma == std::string::npos ? comma : comma - pos);
                gens.push_back(static_cast<unsigned>(std::stoul(tok)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            RingPtr sub = ring_semigroup_subring(ring_rationals(), gens, var);
            RingPtr ambient = ring_univariate(ring_rationals(), var);
            RingValue a = value_from_string(ambient, var);
            RingValue b = value_from_string(sub, var + "^3");
            RingValue c = value_from_string(sub, var + "^2");
            return schanuel_matrix(a, b, c);
        }
        if (opt.ring_file.empty())
            throw validation_error("schanuel needs either --semigroup or --ring with a, b, c");
        RingPtr ring = load_ring(opt);
        RingValue a = value_from_string(ring, a_str);
        RingValue b = value_from_string(ring, b_str);
        RingValue c = value_from_string(ring, c_str);
        return schanuel_matrix(a, b, c);
    }();
    emit(matrix_to_json(m), opt.out_file);
    return kExitOk;
}

int cmd_newton(const Options& opt) {
    SquareMatrix m = load_matrix(opt);
    SquareMatrix lifted = newton_lift(m);
    emit(matrix_to_json(lifted), opt.out_file);
    return kExitOk;
}

int cmd_gcd(const Options& opt, const std::string& p_str, const std::string& q_str,
            const std::string& var) {
    RingPtr ring = load_ring(opt);
    MultiPoly p = poly_from_string(ring, {var}, p_str);
    MultiPoly q = poly_from_string(ring, {var}, q_str);
    MultiPoly g = poly_gcd(p, q);
    std::cout << "gcd: " << poly_to_string(g) << "\n";
    return kExitOk;
}

int cmd_close(const Options& opt) {
    RingPtr ring = load_ring(opt);
    SquareMatrix m = load_matrix(opt, ring);
    ClosureOutcome out = closure_tower(ring, certify_rank1(m));
    if (opt.trace)
        for (const auto& line : out.trace) std::cout << "# " << line << "\n";
    if (out.tower.steps.empty()) {
        std::cout << "tower: empty\n";
    } else {
        for (size_t i = 0; i < out.tower.steps.size(); ++i)
            std::cout << "tower step " << (i + 1) << ": " << value_to_string(out.tower.steps[i])
                      << "\n";
    }
    std::cout << "factorization over the tower top:\n";
    for (size_t i = 0; i < out.fac.f.size(); ++i)
        std::cout << "  f" << (i + 1) << " = " << poly_to_string(out.fac.f[i]) << "\n";
    for (size_t i = 0; i < out.fac.g.size(); ++i)
        std::cout << "  g" << (i + 1) << " = " << poly_to_string(out.fac.g[i]) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rank-1 idempotent factorization over polynomial rings"};
    app.require_subcommand(1);

    Options opt;
    std::string semigroup, var = "t", a_str = "0", b_str = "0", c_str = "0";
    std::string gcd_a, gcd_b, gcd_var = "X";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ring", opt.ring_file, "ring descriptor JSON file");
        sub->add_option("--matrix", opt.matrix_file, "matrix JSON file");
        sub->add_flag("--trace", opt.trace, "print the computation trace");
        sub->add_option("--max-leaves", opt.leaf_cap, "component decomposition leaf cap");
        sub->add_option("--out", opt.out_file, "also write the output document here");
    };

    CLI::App* check = app.add_subcommand("check", "idempotency, trace, rank report");
    add_common(check);
    CLI::App* factor = app.add_subcommand("factor", "factor or report the obstruction tower");
    add_common(factor);
    CLI::App* schanuel = app.add_subcommand("schanuel", "generate the rank-1 test matrix");
    add_common(schanuel);
    schanuel->add_option("--semigroup", semigroup, "semigroup generators, e.g. 2,3");
    schanuel->add_option("--var", var, "ambient variable name");
    schanuel->add_option("--a", a_str, "element a (with --ring)");
    schanuel->add_option("--b", b_str, "element b = a^3 (with --ring)");
    schanuel->add_option("--c", c_str, "element c = a^2 (with --ring)");
    CLI::App* newton = app.add_subcommand("newton", "lift an almost-idempotent matrix");
    add_common(newton);
    CLI::App* gcd = app.add_subcommand("gcd", "polynomial gcd over the given ring");
    add_common(gcd);
    gcd->add_option("first", gcd_a, "first polynomial")->required();
    gcd->add_option("second", gcd_b, "second polynomial")->required();
    gcd->add_option("--var", gcd_var, "polynomial variable name");

    CLI::App* close = app.add_subcommand("close", "closure tower of the base in the extension");
    add_common(close);

    CLI11_PARSE(app, argc, argv);
    set_max_leaves(opt.leaf_cap);

    try {
        if (check->parsed()) return cmd_check(opt);
        if (factor->parsed()) return cmd_factor(opt);
        if (schanuel->parsed()) return cmd_schanuel(opt, semigroup, var, a_str, b_str, c_str);
        if (newton->parsed()) return cmd_newton(opt);
        if (gcd->parsed()) return cmd_gcd(opt, gcd_a, gcd_b, gcd_var);
        if (close->parsed()) return cmd_close(opt);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const rank1_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitValidation;
}
