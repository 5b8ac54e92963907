#pragma once

// JSON (de)serialization for the command-line surface. Rationals travel as
// "num/den" strings or plain integers, complex numbers as [re, im] pairs,
// polynomials as arrays with the constant term first.

#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "adele.hpp"
#include "core/error.hpp"
#include "core/poly.hpp"
#include "core/rational.hpp"
#include "finitetf.hpp"
#include "localpoly.hpp"
#include "quatcsa.hpp"
#include "satake.hpp"
#include "transfer.hpp"

namespace jl::io {

using Json = nlohmann::ordered_json;

// fixed 12-significant-digit formatting for deterministic output
inline double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::atof(buf);
}

inline Json complex_json(const std::complex<double>& z, double tol = 1e-9) {
    if (std::abs(z.imag()) <= tol) return Json(round12(z.real()));
    return Json::array({round12(z.real()), round12(z.imag())});
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw SchemaViolation("expected a rational as integer or \"num/den\" string");
}

inline Json rat_json(const Rat& x) { return Json(rat_str(x)); }

inline std::complex<double> complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_string()) {
        // "re,im"
        std::string s = j.get<std::string>();
        auto pos = s.find(',');
        if (pos == std::string::npos) return {std::atof(s.c_str()), 0.0};
        return {std::atof(s.substr(0, pos).c_str()), std::atof(s.substr(pos + 1).c_str())};
    }
    throw SchemaViolation("expected a complex number");
}

inline MonicPoly poly_from_json(const Json& j) {
    if (!j.is_array() || j.size() < 2)
        throw SchemaViolation("polynomial must be an array with the constant term first");
    std::vector<Rat> coeffs;
    for (const auto& c : j) coeffs.push_back(rat_from_json(c));
    return MonicPoly(std::move(coeffs));
}

inline Json poly_json(const MonicPoly& P) {
    Json arr = Json::array();
    for (long i = 0; i <= P.degree(); ++i) arr.push_back(rat_str(P.coeff(i)));
    return arr;
}

inline Place place_from_string(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return Place::inf();
    return Place::finite(Int(s));
}

inline Json place_json(const Place& v) {
    if (v.infinite) return Json("inf");
    return Json(to_ll(v.p));
}

inline Json cyc_json(const Cyc& v, double tol = 1e-9) { return complex_json(v.to_complex(), tol); }

// --- satake ---------------------------------------------------------------

inline std::vector<Complex> params_from_string(const std::string& s) {
    std::vector<Complex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto pos = item.find(',');
        if (pos == std::string::npos)
            out.emplace_back(std::atof(item.c_str()), 0.0);
        else
            out.emplace_back(std::atof(item.substr(0, pos).c_str()),
                             std::atof(item.substr(pos + 1).c_str()));
    }
    return out;
}

// generator words: products of T<k> factors with optional ^power
inline HeckeElement word_from_string(long n, const Rat& q, const std::string& word) {
    HeckeElement f = HeckeElement::unit(n, q);
    std::stringstream ss(word);
    std::string item;
    while (std::getline(ss, item, '*')) {
        if (item.empty() || item[0] != 'T')
            throw SchemaViolation("word factors look like T<k> or T<k>^<m>: got \"" + item + "\"");
        long k = 0, pow = 1;
        auto caret = item.find('^');
        k = std::atol(item.substr(1, caret).c_str());
        if (caret != std::string::npos) pow = std::atol(item.substr(caret + 1).c_str());
        for (long t = 0; t < pow; ++t) f = f * generator(n, q, k);
    }
    return f;
}

inline Json hecke_json(const HeckeElement& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["exponents"] = e;
        t["coeff"] = Json::array({round12(c.real()), round12(c.imag())});
        terms.push_back(t);
    }
    Json out;
    out["n"] = f.rank();
    out["q"] = rat_str(f.q());
    out["terms"] = terms;
    return out;
}

inline PlacedFamily family_from_json(const Json& j) {
    if (!j.contains("places") || !j.contains("reps") || !j.contains("coeffs"))
        throw SchemaViolation("family needs places, reps, coeffs");
    std::vector<PlaceSpec> places;
    for (const auto& p : j["places"])
        places.push_back(PlaceSpec{p.at("n").get<long>(), rat_from_json(p.at("q"))});
    std::vector<std::vector<SatakeParams>> reps;
    for (const auto& tuple : j["reps"]) {
        std::vector<SatakeParams> pts;
        size_t l = 0;
        for (const auto& params : tuple) {
            if (l >= places.size()) throw SchemaViolation("tuple longer than the place list");
            std::vector<Complex> xs;
            for (const auto& x : params) xs.push_back(complex_from_json(x));
            pts.emplace_back(places[l].n, places[l].q, std::move(xs));
            ++l;
        }
        reps.push_back(std::move(pts));
    }
    std::vector<Complex> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(complex_from_json(c));
    return PlacedFamily(std::move(places), std::move(reps), std::move(coeffs));
}

// --- finite models ----------------------------------------------------------

inline FiniteGroup group_from_json(const Json& j) {
    if (j.contains("permutations"))
        return FiniteGroup::from_permutations(
            j["permutations"].get<std::vector<std::vector<int>>>());
    if (j.contains("table"))
        return FiniteGroup::from_table(j["table"].get<std::vector<std::vector<int>>>());
    throw SchemaViolation("group needs \"permutations\" or \"table\"");
}

inline FiniteModel model_from_json(const Json& j) {
    FiniteGroup G = group_from_json(j.at("group"));
    std::vector<int> gamma = j.value("gamma", std::vector<int>{});
    std::vector<int> z = j.value("z", std::vector<int>{});
    OmegaSpec omega = OmegaSpec::trivial();
    if (j.contains("omega")) {
        omega.order = j["omega"].value("order", 1L);
        omega.pairs.clear();
        if (j["omega"].contains("pairs"))
            for (const auto& pr : j["omega"]["pairs"])
                omega.pairs.emplace_back(pr[0].get<int>(), pr[1].get<long>());
    }
    return FiniteModel(std::move(G), gamma, z, omega);
}

inline TestFunction function_from_json(const FiniteModel& m, const Json& j) {
    if (!j.contains("values")) throw SchemaViolation("function needs \"values\"");
    const Json& vals = j["values"];
    if (static_cast<long>(vals.size()) != m.group().size())
        throw SchemaViolation("function must list one value per group element");
    TestFunction f = m.zero_function();
    for (size_t g = 0; g < vals.size(); ++g) {
        const Json& v = vals[g];
        Rat re, im;
        if (v.is_array() && v.size() == 2) {
            re = rat_from_json(v[0]);
            im = rat_from_json(v[1]);
        } else {
            re = rat_from_json(v);
        }
        f.values[g] = Cyc::gaussian(m.field(), re, im);
    }
    return f;
}

// --- adeles ---------------------------------------------------------------

inline RestrictedElement element_from_json(const Json& j) {
    Rat inf = j.contains("inf") ? rat_from_json(j["inf"]) : Rat(1);
    std::map<Int, Rat> finite;
    if (j.contains("finite"))
        for (auto it = j["finite"].begin(); it != j["finite"].end(); ++it)
            finite[Int(it.key())] = rat_from_json(it.value());
    auto mode = RestrictedElement::Mode::Idele;
    if (j.value("default", "unit") == std::string("integral"))
        mode = RestrictedElement::Mode::Adele;
    return RestrictedElement(std::move(inf), std::move(finite), mode);
}

inline ProductCharacter character_from_json(const Json& j) {
    ProductCharacter chi;
    if (j.contains("norm_power")) chi.norm_power = complex_from_json(j["norm_power"]);
    if (j.contains("local"))
        for (auto it = j["local"].begin(); it != j["local"].end(); ++it) {
            Place v = place_from_string(it.key());
            const Json& spec = it.value();
            LocalCharacterAtom atom;
            if (spec.contains("s")) atom.s = complex_from_json(spec["s"]);
            if (spec.contains("unram_rotation"))
                atom.unram_rotation = rat_from_json(spec["unram_rotation"]);
            if (spec.contains("sign_exponent")) atom.sign_exponent = spec["sign_exponent"].get<int>();
            if (spec.contains("unit")) {
                UnitCharacter uc;
                uc.k = spec["unit"].value("k", 1L);
                if (spec["unit"].contains("rotation"))
                    uc.rotation = rat_from_json(spec["unit"]["rotation"]);
                if (spec["unit"].contains("sign_rotation"))
                    uc.sign_rotation = rat_from_json(spec["unit"]["sign_rotation"]);
                atom.unit = uc;
            }
            chi.local[v].push_back(atom);
        }
    return chi;
}

inline FactorizableFunction integrand_from_json(const Json& j) {
    FactorizableFunction f;
    if (j.contains("inf")) {
        f.arch.lo = rat_from_json(j["inf"].at("lo"));
        f.arch.hi = rat_from_json(j["inf"].at("hi"));
        if (j["inf"].contains("scale")) f.arch.scale = rat_from_json(j["inf"]["scale"]);
    }
    if (j.contains("finite"))
        for (auto it = j["finite"].begin(); it != j["finite"].end(); ++it) {
            std::vector<BallTerm> terms;
            for (const auto& t : it.value()) {
                BallTerm b;
                if (t.contains("center")) b.center = rat_from_json(t["center"]);
                b.k = t.value("k", 0L);
                if (t.contains("coeff")) b.coeff = rat_from_json(t["coeff"]);
                terms.push_back(b);
            }
            f.finite[Int(it.key())] = std::move(terms);
        }
    return f;
}

// --- quaternions ------------------------------------------------------------

inline QuatElement quat_from_json(const QuaternionAlgebra& A, const Json& j) {
    if (!j.is_array() || j.size() != 4)
        throw SchemaViolation("quaternion elements are arrays of four rationals");
    return QuatElement(A, rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2]),
                       rat_from_json(j[3]));
}

inline QuatMat quat_matrix_from_json(const QuaternionAlgebra& A, const Json& j) {
    if (!j.is_array() || j.empty()) throw SchemaViolation("matrix must be a nonempty array of rows");
    size_t n = j.size();
    QuatMat m(A, n);
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw SchemaViolation("matrix rows must all have length " + std::to_string(n));
        for (size_t k = 0; k < n; ++k) m.at(i, k) = quat_from_json(A, j[i][k]);
    }
    return m;
}

inline Matrix<Rat> rational_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw SchemaViolation("matrix must be a nonempty array of rows");
    size_t n = j.size();
    Matrix<Rat> m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw SchemaViolation("matrix must be square");
        for (size_t k = 0; k < n; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

// inline JSON or a path to a file containing it
inline Json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
        std::ifstream in(arg);
        if (!in) throw SchemaViolation("cannot open file: " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaViolation(std::string("JSON parse error: ") + e.what());
    }
}

} // namespace jl::io
