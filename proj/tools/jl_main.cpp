// jl: exact-arithmetic tools for local class transfer, quaternion invariants,
// spherical Hecke data, finite trace-formula models and adele plumbing.
// Every subcommand reads JSON-ish arguments and prints one JSON document
// (transfer check prints one document per place).

#include <CLI11.hpp>

#include <jl/io.hpp>
#include <jl/padic.hpp>

#include <functional>
#include <iostream>

using namespace jl;
using io::Json;

namespace {

struct GlobalOpts {
    long precision = Padic::kDefaultPrecision;
    double tolerance = 1e-9;
    int json_indent = -1;
};

void emit(const Json& j, const GlobalOpts& opts) {
    std::cout << j.dump(opts.json_indent) << "\n";
}

Json trace_value_json(const TraceResult& r, double tol) {
    Json out;
    out["value"] = io::cyc_json(r.value, tol);
    out["degenerate"] = r.degenerate;
    return out;
}

QuaternionAlgebra algebra_from(const std::string& a, const std::string& b) {
    return QuaternionAlgebra(parse_rat(a), parse_rat(b));
}

int run(int argc, char** argv) {
    GlobalOpts opts;
    CLI::App app{"exact tools for conjugacy-class transfer, Hecke characters and finite trace formulas"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);
    app.add_option("--precision", opts.precision, "relative p-adic precision (digits)");
    app.add_option("--tolerance", opts.tolerance, "numeric tolerance for complex comparisons");
    app.add_option("--json-indent", opts.json_indent, "indentation for JSON output (-1: compact)");

    // ----- padic -----
    auto* padic_cmd = app.add_subcommand("padic", "truncated p-adic arithmetic");
    padic_cmd->require_subcommand(1);
    std::string padic_p, padic_x, padic_poly, padic_r0;

    auto* padic_norm_cmd = padic_cmd->add_subcommand("norm", "normalized norm |x|_p");
    padic_norm_cmd->add_option("--p", padic_p)->required();
    padic_norm_cmd->add_option("--x", padic_x, "rational, as num/den")->required();
    padic_norm_cmd->callback([&] {
        Padic x(Int(padic_p), parse_rat(padic_x), opts.precision);
        emit(Json{{"norm", rat_str(padic_norm(x))}}, opts);
    });

    auto* hensel_cmd = padic_cmd->add_subcommand("hensel", "lift a simple root mod p to mod p^N");
    hensel_cmd->add_option("--p", padic_p)->required();
    hensel_cmd->add_option("--poly", padic_poly, "monic, constant term first")->required();
    hensel_cmd->add_option("--r0", padic_r0)->required();
    hensel_cmd->callback([&] {
        MonicPoly P = io::poly_from_json(io::load_json_arg(padic_poly));
        Padic r = hensel_lift(P, Int(padic_r0), Int(padic_p), opts.precision);
        Json out;
        if (r.is_zero()) {
            out["zero"] = true;
        } else {
            out["valuation"] = r.valuation();
            out["unit"] = r.unit().str();
            out["precision"] = r.precision();
        }
        out["text"] = r.str();
        emit(out, opts);
    });

    auto* square_cmd = padic_cmd->add_subcommand("unit-square", "is the unit a square in Z_p^x");
    square_cmd->add_option("--p", padic_p)->required();
    square_cmd->add_option("--x", padic_x)->required();
    square_cmd->callback([&] {
        Padic x(Int(padic_p), parse_rat(padic_x), opts.precision);
        emit(Json{{"square", is_unit_square(x)}}, opts);
    });

    // ----- poly -----
    auto* poly_cmd = app.add_subcommand("poly", "factor-degree analysis over Q_p and R");
    poly_cmd->require_subcommand(1);
    std::string poly_arg, poly_place;
    long poly_u = 1;

    auto* newton_cmd = poly_cmd->add_subcommand("newton", "Newton polygon");
    newton_cmd->add_option("--p", poly_place)->required();
    newton_cmd->add_option("--poly", poly_arg)->required();
    newton_cmd->callback([&] {
        NewtonPolygon np = newton_polygon(io::poly_from_json(io::load_json_arg(poly_arg)),
                                          Int(poly_place));
        Json verts = Json::array();
        for (auto& [i, v] : np.vertices) verts.push_back(Json::array({i, v}));
        Json segs = Json::array();
        for (auto& s : np.segments)
            segs.push_back(Json{{"slope", rat_str(s.slope)}, {"length", s.length}});
        emit(Json{{"vertices", verts}, {"segments", segs}}, opts);
    });

    auto* degrees_cmd = poly_cmd->add_subcommand("factor-degrees", "irreducible factor degrees");
    degrees_cmd->add_option("--place", poly_place, "prime or inf")->required();
    degrees_cmd->add_option("--poly", poly_arg)->required();
    degrees_cmd->callback([&] {
        FactorShape shape = factor_degrees(io::poly_from_json(io::load_json_arg(poly_arg)),
                                           io::place_from_string(poly_place));
        emit(Json{{"place", io::place_json(shape.place)},
                  {"degrees", shape.degrees},
                  {"certified", shape.certified}},
             opts);
    });

    auto* ucompat_cmd = poly_cmd->add_subcommand("ucompat", "u-compatibility of factor degrees");
    ucompat_cmd->add_option("--place", poly_place)->required();
    ucompat_cmd->add_option("--u", poly_u)->required();
    ucompat_cmd->add_option("--poly", poly_arg)->required();
    ucompat_cmd->callback([&] {
        bool ok = is_u_compatible(io::poly_from_json(io::load_json_arg(poly_arg)), poly_u,
                                  io::place_from_string(poly_place));
        emit(Json{{"compatible", ok}}, opts);
    });

    auto* etale_cmd = poly_cmd->add_subcommand("etale", "(e, f) invariants of the etale algebra");
    etale_cmd->add_option("--p", poly_place)->required();
    etale_cmd->add_option("--poly", poly_arg)->required();
    etale_cmd->callback([&] {
        EtaleInvariants inv =
            etale_algebra_invariants(io::poly_from_json(io::load_json_arg(poly_arg)), Int(poly_place));
        Json arr = Json::array();
        for (auto& [e, f] : inv) arr.push_back(Json::array({e, f}));
        emit(Json{{"invariants", arr}}, opts);
    });

    // ----- quat -----
    auto* quat_cmd = app.add_subcommand("quat", "quaternion algebras and reduced polynomials");
    quat_cmd->require_subcommand(1);
    std::string quat_a, quat_b, quat_x, quat_place, quat_matrix;

    auto* hilbert_cmd = quat_cmd->add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
    hilbert_cmd->add_option("--a", quat_a)->required();
    hilbert_cmd->add_option("--b", quat_b)->required();
    hilbert_cmd->add_option("--place", quat_place, "prime or inf")->required();
    hilbert_cmd->callback([&] {
        int s = hilbert_symbol(parse_rat(quat_a), parse_rat(quat_b),
                               io::place_from_string(quat_place));
        emit(Json{{"symbol", s}}, opts);
    });

    auto* ram_cmd = quat_cmd->add_subcommand("ramified", "set of non-split places");
    ram_cmd->add_option("--a", quat_a)->required();
    ram_cmd->add_option("--b", quat_b)->required();
    ram_cmd->callback([&] {
        RamificationSet ram = ramified_places(algebra_from(quat_a, quat_b));
        Json primes = Json::array();
        for (const Int& p : ram.primes) primes.push_back(to_ll(p));
        emit(Json{{"primes", primes}, {"infinite", ram.infinite}, {"size", ram.size()}}, opts);
    });

    auto* qcp_cmd = quat_cmd->add_subcommand("charpoly", "reduced characteristic polynomial");
    qcp_cmd->add_option("--a", quat_a)->required();
    qcp_cmd->add_option("--b", quat_b)->required();
    qcp_cmd->add_option("--x", quat_x, "four rationals t,u,v,w")->required();
    qcp_cmd->callback([&] {
        auto A = algebra_from(quat_a, quat_b);
        std::stringstream ss(quat_x);
        std::vector<Rat> c;
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(parse_rat(item));
        if (c.size() != 4) throw SchemaViolation("--x needs four comma-separated rationals");
        QuatElement x(A, c[0], c[1], c[2], c[3]);
        emit(Json{{"poly", io::poly_json(reduced_char_poly_quat(x))},
                  {"trace", rat_str(reduced_trace(x))},
                  {"norm", rat_str(reduced_norm(x))}},
             opts);
    });

    auto* rs_cmd = quat_cmd->add_subcommand("rs", "regular semisimple test");
    rs_cmd->add_option("--a", quat_a)->required();
    rs_cmd->add_option("--b", quat_b)->required();
    rs_cmd->add_option("--x", quat_x)->required();
    rs_cmd->callback([&] {
        auto A = algebra_from(quat_a, quat_b);
        std::stringstream ss(quat_x);
        std::vector<Rat> c;
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(parse_rat(item));
        if (c.size() != 4) throw SchemaViolation("--x needs four comma-separated rationals");
        QuatElement x(A, c[0], c[1], c[2], c[3]);
        emit(Json{{"regular_semisimple", is_regular_semisimple_quat(x)}}, opts);
    });

    auto* mcp_cmd = quat_cmd->add_subcommand("matrix-charpoly",
                                             "reduced char poly of a matrix over D_v");
    mcp_cmd->add_option("--a", quat_a)->required();
    mcp_cmd->add_option("--b", quat_b)->required();
    mcp_cmd->add_option("--place", quat_place)->required();
    mcp_cmd->add_option("--matrix", quat_matrix, "rows of quadruples, JSON")->required();
    mcp_cmd->callback([&] {
        auto A = algebra_from(quat_a, quat_b);
        QuatMat g = io::quat_matrix_from_json(A, io::load_json_arg(quat_matrix));
        emit(Json{{"poly", io::poly_json(
                               reduced_char_poly_matrix(g, io::place_from_string(quat_place)))}},
             opts);
    });

    // ----- transfer -----
    auto* transfer_cmd = app.add_subcommand("transfer", "conjugacy-class transfer");
    transfer_cmd->require_subcommand(1);
    std::string tr_poly, tr_places, tr_matrix, tr_shape, tr_direction, tr_a, tr_b, tr_ram;
    long tr_d = 1;

    auto* class_cmd = transfer_cmd->add_subcommand("class", "class tag of a rational matrix");
    class_cmd->add_option("--matrix", tr_matrix)->required();
    class_cmd->callback([&] {
        ConjClassTag tag = class_of_matrix(io::rational_matrix_from_json(io::load_json_arg(tr_matrix)));
        emit(Json{{"poly", io::poly_json(tag.poly)}}, opts);
    });

    auto* check_cmd = transfer_cmd->add_subcommand("check", "local transferability per place");
    check_cmd->add_option("--poly", tr_poly)->required();
    check_cmd->add_option("--d", tr_d)->required();
    check_cmd->add_option("--places", tr_places, "comma-separated primes or inf")->required();
    check_cmd->callback([&] {
        ConjClassTag tag(io::poly_from_json(io::load_json_arg(tr_poly)));
        std::stringstream ss(tr_places);
        std::string item;
        while (std::getline(ss, item, ',')) {
            Place v = io::place_from_string(item);
            Json line;
            line["place"] = io::place_json(v);
            line["degrees"] = factor_degrees(tag.poly, v).degrees;
            line["compatible"] = local_transferable(tag, tr_d, v);
            emit(line, opts);
        }
    });

    auto* shape_cmd = transfer_cmd->add_subcommand("shape", "corresponding Levi block shape");
    shape_cmd->add_option("--poly", tr_poly)->required();
    shape_cmd->add_option("--d", tr_d)->required();
    shape_cmd->add_option("--place", tr_places)->required();
    shape_cmd->callback([&] {
        ConjClassTag tag(io::poly_from_json(io::load_json_arg(tr_poly)));
        LeviShape s = corresponding_block_shape(tag, tr_d, io::place_from_string(tr_places));
        emit(Json{{"shape", s.sizes}}, opts);
    });

    auto* comp_cmd = transfer_cmd->add_subcommand("companion", "companion matrix of a monic polynomial");
    comp_cmd->add_option("--poly", tr_poly)->required();
    comp_cmd->callback([&] {
        Matrix<Rat> C = companion_of(io::poly_from_json(io::load_json_arg(tr_poly)));
        Json rows = Json::array();
        for (size_t i = 0; i < C.rows(); ++i) {
            Json row = Json::array();
            for (size_t j = 0; j < C.cols(); ++j) row.push_back(rat_str(C(i, j)));
            rows.push_back(row);
        }
        emit(Json{{"matrix", rows}}, opts);
    });

    auto* levi_cmd = transfer_cmd->add_subcommand("levi", "Levi correspondence index map");
    levi_cmd->add_option("--shape", tr_shape, "comma-separated block sizes")->required();
    levi_cmd->add_option("--d", tr_d)->required();
    levi_cmd
        ->add_option("--direction", tr_direction, "GtoGprime or GprimeToG")
        ->required()
        ->check(CLI::IsMember({"GtoGprime", "GprimeToG"}));
    levi_cmd->callback([&] {
        std::vector<long> sizes;
        std::stringstream ss(tr_shape);
        std::string item;
        while (std::getline(ss, item, ',')) sizes.push_back(std::atol(item.c_str()));
        auto dir = tr_direction == "GtoGprime" ? LeviDirection::GtoGprime
                                               : LeviDirection::GprimeToG;
        auto out = levi_correspondence(LeviShape(sizes), tr_d, dir);
        emit(out ? Json{{"shape", out->sizes}} : Json{{"shape", nullptr}}, opts);
    });

    auto* global_cmd = transfer_cmd->add_subcommand("global", "transferability at every ramified place");
    global_cmd->add_option("--poly", tr_poly)->required();
    global_cmd->add_option("--d", tr_d)->required();
    global_cmd->add_option("--a", tr_a, "quaternion parameter a (with --b)");
    global_cmd->add_option("--b", tr_b, "quaternion parameter b (with --a)");
    global_cmd->add_option("--ram", tr_ram, "explicit ramification: p:dv comma-separated");
    global_cmd->callback([&] {
        ConjClassTag tag(io::poly_from_json(io::load_json_arg(tr_poly)));
        std::optional<GlobalAlgebra> D;
        if (!tr_a.empty() && !tr_b.empty()) {
            D = GlobalAlgebra::from_quaternion(algebra_from(tr_a, tr_b));
        } else if (!tr_ram.empty()) {
            std::vector<std::pair<Place, long>> local;
            std::stringstream ss(tr_ram);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto pos = item.find(':');
                long dv = pos == std::string::npos ? tr_d : std::atol(item.substr(pos + 1).c_str());
                local.emplace_back(io::place_from_string(item.substr(0, pos)), dv);
            }
            D = GlobalAlgebra(tr_d, std::move(local));
        } else if (tr_d == 1) {
            D = GlobalAlgebra::split_algebra();
        } else {
            throw SchemaViolation("provide --a/--b or --ram for d > 1");
        }
        TransferReport rep = global_transferable(tag, *D);
        Json verdicts = Json::array();
        for (auto& v : rep.verdicts)
            verdicts.push_back(Json{{"place", io::place_json(v.place)},
                                    {"degrees", v.degrees},
                                    {"compatible", v.compatible}});
        emit(Json{{"transferable", rep.transferable},
                  {"certified_converse", rep.certified_converse},
                  {"report", verdicts}},
             opts);
    });

    // ----- satake -----
    auto* satake_cmd = app.add_subcommand("satake", "spherical Hecke algebra and unramified duals");
    satake_cmd->require_subcommand(1);
    std::string sa_q, sa_params, sa_params2, sa_word, sa_family;
    long sa_n = 1, sa_k = 0;

    auto* gen_cmd = satake_cmd->add_subcommand("generator", "minuscule basis element");
    gen_cmd->add_option("--n", sa_n)->required();
    gen_cmd->add_option("--q", sa_q)->required();
    gen_cmd->add_option("--k", sa_k)->required();
    gen_cmd->callback([&] { emit(io::hecke_json(generator(sa_n, parse_rat(sa_q), sa_k)), opts); });

    auto* trace_cmd = satake_cmd->add_subcommand("trace", "trace of a generator word");
    trace_cmd->add_option("--n", sa_n)->required();
    trace_cmd->add_option("--q", sa_q)->required();
    trace_cmd->add_option("--params", sa_params, "re,im;re,im;...")->required();
    trace_cmd->add_option("--word", sa_word, "e.g. T1 or T1*T2^2")->required();
    trace_cmd->callback([&] {
        Rat q = parse_rat(sa_q);
        SatakeParams p(sa_n, q, io::params_from_string(sa_params));
        HeckeElement f = io::word_from_string(sa_n, q, sa_word);
        emit(io::complex_json(trace_unramified(p, f), opts.tolerance), opts);
    });

    auto* inw_cmd = satake_cmd->add_subcommand("inw", "membership in the compact dual and hermitian test");
    inw_cmd->add_option("--n", sa_n)->required();
    inw_cmd->add_option("--q", sa_q)->required();
    inw_cmd->add_option("--params", sa_params)->required();
    inw_cmd->callback([&] {
        SatakeParams p(sa_n, parse_rat(sa_q), io::params_from_string(sa_params));
        emit(Json{{"in_w", in_W(p, opts.tolerance)}, {"hermitian", is_hermitian(p, opts.tolerance)}},
             opts);
    });

    auto* sep_cmd = satake_cmd->add_subcommand("separate", "generator separating two parameter points");
    sep_cmd->add_option("--n", sa_n)->required();
    sep_cmd->add_option("--q", sa_q)->required();
    sep_cmd->add_option("--params1", sa_params)->required();
    sep_cmd->add_option("--params2", sa_params2)->required();
    sep_cmd->callback([&] {
        Rat q = parse_rat(sa_q);
        SatakeParams p1(sa_n, q, io::params_from_string(sa_params));
        SatakeParams p2(sa_n, q, io::params_from_string(sa_params2));
        HeckeElement g = separate_points(p1, p2, opts.tolerance);
        long k = 0;
        for (long i = 0; i < sa_n; ++i)
            if (g.terms().begin()->first[i] == 1) k = i + 1;
        emit(Json{{"k", k},
                  {"trace1", io::complex_json(trace_unramified(p1, g), opts.tolerance)},
                  {"trace2", io::complex_json(trace_unramified(p2, g), opts.tolerance)}},
             opts);
    });

    auto* indep_cmd = satake_cmd->add_subcommand("independence", "constructive character independence");
    indep_cmd->add_option("--family", sa_family, "JSON family or a file")->required();
    indep_cmd->callback([&] {
        PlacedFamily fam = io::family_from_json(io::load_json_arg(sa_family));
        WitnessResult w = independence_witness(fam, opts.tolerance);
        if (w.certified_zero) {
            emit(Json{{"certified_zero", true}}, opts);
            return;
        }
        Json factors = Json::array();
        for (auto& f : w.factors) factors.push_back(io::hecke_json(f));
        Json per = Json::array();
        for (auto& t : w.per_rep) per.push_back(io::complex_json(t, 0));
        emit(Json{{"certified_zero", false},
                  {"delta", io::round12(w.delta)},
                  {"abs_sum", io::round12(std::abs(w.sum))},
                  {"sum", io::complex_json(w.sum, 0)},
                  {"per_rep", per},
                  {"witness", factors}},
             opts);
    });

    // ----- tracefinite -----
    auto* tf_cmd = app.add_subcommand("tracefinite", "exact finite trace-formula models");
    tf_cmd->require_subcommand(1);
    std::string tf_model, tf_function, tf_left, tf_right, tf_match, tf_f, tf_fprime;

    auto* avg_cmd = tf_cmd->add_subcommand("average", "omega-average of a test function");
    avg_cmd->add_option("--model", tf_model)->required();
    avg_cmd->add_option("--function", tf_function)->required();
    avg_cmd->callback([&] {
        FiniteModel m = io::model_from_json(io::load_json_arg(tf_model));
        TestFunction f = io::function_from_json(m, io::load_json_arg(tf_function));
        TestFunction fw = m.omega_average(f);
        Json vals = Json::array();
        for (auto& v : fw.values) vals.push_back(io::cyc_json(v, opts.tolerance));
        emit(Json{{"values", vals}}, opts);
    });

    auto* verify_cmd = tf_cmd->add_subcommand("verify", "spectral = geometric = kernel check");
    verify_cmd->add_option("--model", tf_model)->required();
    verify_cmd->add_option("--function", tf_function)->required();
    verify_cmd->callback([&] {
        FiniteModel m = io::model_from_json(io::load_json_arg(tf_model));
        TestFunction f = io::function_from_json(m, io::load_json_arg(tf_function));
        TraceResult s = m.spectral_trace(f);
        GeometricResult g = m.geometric_trace(f);
        TraceResult k = m.kernel_trace(f);
        bool equal = !s.degenerate && s.value == g.value && s.value == k.value;
        Json orbits = Json::array();
        for (auto& o : g.orbits)
            orbits.push_back(Json{{"representative", o.representative},
                                  {"cosets", o.coset_ids},
                                  {"vol_factor", rat_str(o.vol_factor)},
                                  {"orbital", io::cyc_json(o.orbital, opts.tolerance)},
                                  {"term", io::cyc_json(o.term, opts.tolerance)}});
        Json out;
        out["degenerate"] = s.degenerate;
        out["spectral"] = io::cyc_json(s.value, opts.tolerance);
        out["geometric"] = io::cyc_json(g.value, opts.tolerance);
        out["kernel"] = io::cyc_json(k.value, opts.tolerance);
        out["equal"] = equal || s.degenerate;
        out["dimension"] = m.space_dimension();
        out["orbits"] = orbits;
        emit(out, opts);
        if (!equal && !s.degenerate) throw InternalError("trace formula identity failed");
    });

    auto* dec_cmd = tf_cmd->add_subcommand("decompose", "spectral decomposition ledger");
    dec_cmd->add_option("--model", tf_model)->required();
    dec_cmd->add_option("--function", tf_function)->required();
    dec_cmd->callback([&] {
        FiniteModel m = io::model_from_json(io::load_json_arg(tf_model));
        TestFunction f = io::function_from_json(m, io::load_json_arg(tf_function));
        DecompositionResult d = m.spectral_decomposition(f);
        Json entries = Json::array();
        for (auto& e : d.entries)
            entries.push_back(Json{{"character", e.character},
                                   {"degree", e.degree},
                                   {"multiplicity", to_ll(e.multiplicity)},
                                   {"trace", io::cyc_json(e.trace, opts.tolerance)},
                                   {"contribution", io::cyc_json(e.contribution, opts.tolerance)}});
        emit(Json{{"degenerate", d.degenerate},
                  {"entries", entries},
                  {"spectral", io::cyc_json(d.spectral, opts.tolerance)},
                  {"verified", d.verified}},
             opts);
    });

    auto* cmp_cmd = tf_cmd->add_subcommand("compare", "two-model term-by-term comparison");
    cmp_cmd->add_option("--left", tf_left)->required();
    cmp_cmd->add_option("--right", tf_right)->required();
    cmp_cmd->add_option("--match", tf_match, "{\"pairs\":[[right_orbit,left_orbit],...]}")->required();
    cmp_cmd->add_option("--f", tf_f)->required();
    cmp_cmd->add_option("--fprime", tf_fprime)->required();
    cmp_cmd->callback([&] {
        FiniteModel left = io::model_from_json(io::load_json_arg(tf_left));
        FiniteModel right = io::model_from_json(io::load_json_arg(tf_right));
        TestFunction f = io::function_from_json(left, io::load_json_arg(tf_f));
        TestFunction fprime = io::function_from_json(right, io::load_json_arg(tf_fprime));
        std::vector<std::pair<size_t, size_t>> match;
        Json mj = io::load_json_arg(tf_match);
        for (const auto& pr : mj.at("pairs"))
            match.emplace_back(pr[0].get<size_t>(), pr[1].get<size_t>());
        ComparisonReport rep = compare_models(left, right, match, f, fprime);
        Json matched = Json::array();
        for (auto& t : rep.matched)
            matched.push_back(Json{{"right", t.right_orbit},
                                   {"left", t.left_orbit},
                                   {"term", io::cyc_json(t.left_term, opts.tolerance)}});
        emit(Json{{"matched", matched},
                  {"vanishing_left", rep.vanishing_left},
                  {"vanishing_right", rep.vanishing_right},
                  {"spectral_left", io::cyc_json(rep.spectral_left, opts.tolerance)},
                  {"spectral_right", io::cyc_json(rep.spectral_right, opts.tolerance)},
                  {"spectral_equal", rep.spectral_equal}},
             opts);
    });

    // ----- adele -----
    auto* adele_cmd = app.add_subcommand("adele", "restricted products over Q");
    adele_cmd->require_subcommand(1);
    std::string ad_g, ad_chi, ad_fn, ad_x;

    auto* anorm_cmd = adele_cmd->add_subcommand("norm", "idele norm, exact");
    anorm_cmd->add_option("--g", ad_g)->required();
    anorm_cmd->callback([&] {
        emit(Json{{"norm", rat_str(idele_norm(io::element_from_json(io::load_json_arg(ad_g))))}},
             opts);
    });

    auto* diag_opt = adele_cmd->add_subcommand("character", "evaluate a product character");
    diag_opt->add_option("--chi", ad_chi)->required();
    diag_opt->add_option("--g", ad_g)->required();
    diag_opt->callback([&] {
        auto chi = io::character_from_json(io::load_json_arg(ad_chi));
        auto g = io::element_from_json(io::load_json_arg(ad_g));
        emit(Json{{"value", io::complex_json(evaluate_character(chi, g), opts.tolerance)}}, opts);
    });

    auto* integ_cmd = adele_cmd->add_subcommand("integrate", "factorizable integral");
    integ_cmd->add_option("--f", ad_fn)->required();
    integ_cmd->callback([&] {
        emit(Json{{"integral",
                   rat_str(integrate_factorizable(io::integrand_from_json(io::load_json_arg(ad_fn))))}},
             opts);
    });

    auto* decomp_cmd = adele_cmd->add_subcommand("decompose", "idele decomposition r * t * u");
    decomp_cmd->add_option("--g", ad_g)->required();
    decomp_cmd->callback([&] {
        IdeleDecomposition dec = idele_decompose(io::element_from_json(io::load_json_arg(ad_g)));
        Json units;
        for (auto& [p, u] : dec.units) units[p.str()] = rat_str(u);
        emit(Json{{"r", rat_str(dec.r)},
                  {"t", rat_str(dec.t)},
                  {"units", units},
                  {"tail", rat_str(dec.tail)}},
             opts);
    });

    // global flags remain valid after the subcommand name
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        for (CLI::App* sub : cmd->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json err{{"error", {{"kind", "UnknownCommand"}, {"detail", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const jl::Error& e) {
        Json err{{"error", {{"kind", e.kind()}, {"detail", e.what()}}}};
        std::cout << err.dump() << "\n";
        return e.internal() ? 2 : 1;
    } catch (const std::exception& e) {
        Json err{{"error", {{"kind", "InternalError"}, {"detail", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 2;
    }
}
