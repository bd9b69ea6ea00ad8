#include "semnorm/jsonio.hpp"

#include "semnorm/polytext.hpp"

namespace semnorm {

using nlohmann::json;

json ring_to_json(const RingPtr& r) {
    json j;
    switch (r->kind) {
        case RingKind::Integers: j["type"] = "integers"; break;
        case RingKind::Rationals: j["type"] = "rationals"; break;
        case RingKind::PrimeField:
            j["type"] = "prime_field";
            j["p"] = r->char_p.get_str();
            break;
        case RingKind::Univariate:
            j["type"] = "univariate_poly";
            j["base"] = ring_to_json(r->base);
            j["var"] = r->vars[0];
            break;
        case RingKind::Multivariate:
            j["type"] = "multivariate_poly";
            j["base"] = ring_to_json(r->base);
            j["vars"] = r->vars;
            break;
        case RingKind::Product: {
            j["type"] = "product";
            json fs = json::array();
            for (const auto& f : r->factors) fs.push_back(ring_to_json(f));
            j["factors"] = std::move(fs);
            break;
        }
        case RingKind::SemigroupSubring:
            j["type"] = "semigroup_subring";
            j["field"] = ring_to_json(r->base);
            j["generators"] = r->semigroup;
            j["var"] = r->vars[0];
            break;
        case RingKind::DualNumbers:
            j["type"] = "dual_numbers";
            j["base"] = ring_to_json(r->base);
            j["order"] = r->dual_order;
            j["var"] = r->vars[0];
            break;
        case RingKind::Localization:
            j["type"] = "localization";
            j["base"] = ring_to_json(r->base);
            j["inverted"] = value_to_string(r->loc_element);
            break;
        case RingKind::ReducedQuotient:
            j["type"] = "reduced_quotient";
            j["base"] = ring_to_json(r->base);
            j["modulus"] = value_to_string(r->quot_modulus);
            break;
        case RingKind::FractionField:
            j["type"] = "fraction_field";
            j["base"] = ring_to_json(r->base);
            break;
    }
    return j;
}

RingPtr ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw parse_error("ring descriptor needs a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    auto need = [&](const char* key) -> const json& {
        if (!j.contains(key))
            throw parse_error("ring descriptor \"" + type + "\" needs field \"" + key + "\"");
        return j[key];
    };
    if (type == "integers") return ring_integers();
    if (type == "rationals") return ring_rationals();
    if (type == "prime_field") {
        const json& p = need("p");
        Int pv = p.is_string() ? Int(p.get<std::string>()) : Int(p.get<long>());
        return ring_prime_field(pv);
    }
    if (type == "univariate_poly")
        return ring_univariate(ring_from_json(need("base")), need("var").get<std::string>());
    if (type == "multivariate_poly")
        return ring_multivariate(ring_from_json(need("base")),
                                 need("vars").get<std::vector<std::string>>());
    if (type == "product") {
        std::vector<RingPtr> fs;
        for (const auto& f : need("factors")) fs.push_back(ring_from_json(f));
        return ring_product(std::move(fs));
    }
    if (type == "semigroup_subring")
        return ring_semigroup_subring(ring_from_json(need("field")),
                                      need("generators").get<std::vector<unsigned>>(),
                                      need("var").get<std::string>());
    if (type == "dual_numbers") {
        std::string var = j.contains("var") ? j["var"].get<std::string>() : "eps";
        return ring_dual_numbers(ring_from_json(need("base")), need("order").get<unsigned>(), var);
    }
    if (type == "localization") {
        RingPtr base = ring_from_json(need("base"));
        return ring_localization(base, value_from_string(base, need("inverted").get<std::string>()));
    }
    if (type == "reduced_quotient") {
        RingPtr base = ring_from_json(need("base"));
        return ring_reduced_quotient(base,
                                     value_from_string(base, need("modulus").get<std::string>()));
    }
    if (type == "fraction_field") return ring_fraction_field(ring_from_json(need("base")));
    throw parse_error("unknown ring type \"" + type + "\"");
}

json matrix_to_json(const SquareMatrix& m) {
    json j;
    j["n"] = m.n();
    j["vars"] = m.vars();
    j["ring"] = ring_to_json(m.coeff_ring());
    json rows = json::array();
    for (size_t i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < m.n(); ++k) row.push_back(poly_to_string(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

SquareMatrix matrix_from_json(const json& j, RingPtr override_ring) {
    if (!j.is_object()) throw parse_error("matrix document must be a JSON object");
    for (const char* key : {"n", "vars", "ring", "entries"})
        if (!j.contains(key)) throw parse_error(std::string("matrix document needs field \"") + key + "\"");
    size_t n = j["n"].get<size_t>();
    std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
    RingPtr ring = override_ring ? override_ring : ring_from_json(j["ring"]);
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != n)
        throw parse_error("matrix entries must be an n x n array of polynomial strings");
    SquareMatrix m(ring, vars, n);
    for (size_t i = 0; i < n; ++i) {
        const json& row = entries[i];
        if (!row.is_array() || row.size() != n)
            throw parse_error("matrix row " + std::to_string(i + 1) + " is not length " +
                              std::to_string(n));
        for (size_t k = 0; k < n; ++k) {
            try {
                m.set(i, k, poly_from_string(ring, vars, row[k].get<std::string>()));
            } catch (const parse_error& e) {
                throw parse_error("entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                                  "): " + e.what());
            }
        }
    }
    return m;
}

json result_to_json(const FactorizationResult& res) {
    json j;
    j["status"] = res.factored ? "factored" : "obstructed";
    json f = json::array(), g = json::array(), tower = json::array();
    for (const auto& fi : res.fac.f) f.push_back(poly_to_string(fi));
    for (const auto& gj : res.fac.g) g.push_back(poly_to_string(gj));
    for (const auto& c : res.tower.steps) tower.push_back(value_to_string(c));
    j["f"] = std::move(f);
    j["g"] = std::move(g);
    j["tower"] = std::move(tower);
    return j;
}

}  // namespace semnorm
