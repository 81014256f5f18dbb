#include "internal.hpp"

namespace superkernel::dsl {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += sep;
        s += v[k];
    }
    return s;
}

bool standard_names(const SuperDomain& x) {
    return x.coordinates()->same_as(*standard_coordinates(x.p(), x.q(), x.field()));
}

bool unbounded(const Box& box) {
    for (const auto& iv : box)
        if (iv.lo || iv.hi) return false;
    return true;
}

std::string box_text(const Box& box) {
    std::vector<std::string> parts;
    for (const auto& iv : box) parts.push_back(iv.to_string());
    return "[" + join(parts) + "]";
}

/// affine(p|q) with its optional clauses; the coefficient algebra is given
/// by the caller (a name or an inline description).
std::string domain_text(const SuperDomain& x, const std::string& coeff) {
    std::string s = "affine(" + x.dim_string() + ")";
    if (!standard_names(x))
        s += " coords [" + join(x.coordinates()->even_names()) + (x.p() ? " |" : "|") +
             (x.q() ? " " + join(x.coordinates()->odd_names()) : "") + "]";
    if (!unbounded(x.box())) s += " on " + box_text(x.box());
    if (!x.has_trivial_coeff() && !coeff.empty()) s += " coeff " + coeff;
    if (x.field() == Field::Complex) s += " field C";
    return s;
}

std::vector<std::string> names(const Context& c, Parity p) {
    return p == Parity::Even ? c.even_names() : c.odd_names();
}

std::vector<std::string> morphism_lines(const SuperMorphism& m) {
    const auto& tc = *m.target().coordinates();
    const auto& cc = *m.target().coeff()->context();
    std::vector<std::string> out;
    for (std::size_t a = 0; a < m.components().size(); ++a)
        out.push_back((a < tc.num_even() ? tc.even_names()[a] : tc.odd_names()[a - tc.num_even()]) + " = " +
                      m.component(a).to_string());
    for (std::size_t k = 0; k < m.coeff_images().size(); ++k)
        out.push_back((k < cc.num_even() ? cc.even_names()[k] : cc.odd_names()[k - cc.num_even()]) + " = " +
                      m.coeff_images()[k].to_string());
    return out;
}

Json algebra_json(const WeilAlgebra& a) {
    const auto& p = a.presentation();
    Json j;
    j["type"] = "algebra";
    j["even"] = p.ctx->even_names();
    j["odd"] = p.ctx->odd_names();
    j["truncate"] = std::to_string(p.truncate);
    Json rel = Json::array();
    for (const auto& r : p.relations) rel.push_back(r.to_string());
    j["relations"] = rel;
    j["field"] = to_string(a.field());
    j["dim"] = a.graded_dim();
    j["girth"] = std::to_string(a.girth());
    Json basis = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis_name(i));
    j["basis"] = basis;
    return j;
}

Json domain_json(const SuperDomain& x) {
    Json j;
    j["type"] = "domain";
    j["even"] = x.coordinates()->even_names();
    j["odd"] = x.coordinates()->odd_names();
    Json box = Json::array();
    for (const auto& iv : x.box()) box.push_back(iv.to_string());
    j["box"] = box;
    j["coeff"] = x.has_trivial_coeff() ? Json(nullptr) : algebra_json(*x.coeff());
    j["field"] = to_string(x.field());
    return j;
}

Json morphism_json(const SuperMorphism& m) {
    Json j;
    j["type"] = "morphism";
    j["source"] = domain_json(m.source());
    if (m.source_space()) {
        Json gens = Json::array();
        for (const auto& g : m.source_space()->generators()) gens.push_back(g.to_string());
        j["source_ideal"] = gens;
    }
    j["target"] = domain_json(m.target());
    Json comps = Json::object(), imgs = Json::object();
    const auto& tc = *m.target().coordinates();
    const auto& cc = *m.target().coeff()->context();
    for (std::size_t a = 0; a < m.components().size(); ++a)
        comps[a < tc.num_even() ? tc.even_names()[a] : tc.odd_names()[a - tc.num_even()]] = m.component(a).to_string();
    for (std::size_t k = 0; k < m.coeff_images().size(); ++k)
        imgs[k < cc.num_even() ? cc.even_names()[k] : cc.odd_names()[k - cc.num_even()]] = m.coeff_images()[k].to_string();
    j["components"] = comps;
    j["coeff_images"] = imgs;
    j["verdict"] = to_string(m.verdict());
    return j;
}

}  // namespace

const SuperDomain& Value::as_domain() const {
    if (kind == Kind::Bundle) return std::get<WeilBundle>(data).total;
    return std::get<SuperDomain>(data);
}

std::string render_weil_body(const WeilAlgebra& a) {
    const auto& p = a.presentation();
    std::vector<std::string> fields;
    if (p.ctx->num_even()) fields.push_back("even: [" + join(names(*p.ctx, Parity::Even)) + "]");
    if (p.ctx->num_odd()) fields.push_back("odd: [" + join(names(*p.ctx, Parity::Odd)) + "]");
    fields.push_back("truncate: " + std::to_string(p.truncate));
    if (!p.relations.empty()) {
        std::vector<std::string> rel;
        for (const auto& r : p.relations) rel.push_back(r.to_string());
        fields.push_back("relations: [" + join(rel) + "]");
    }
    if (a.field() == Field::Complex) fields.push_back("field: C");
    return "weil { " + join(fields, "; ") + " }";
}

std::string render_algebra(const std::string& name, const WeilAlgebra& a) {
    return "algebra " + name + " = " + render_weil_body(a);
}

std::string render_domain(const std::string& name, const SuperDomain& x, const std::string& coeff_name) {
    if (!x.has_trivial_coeff() && coeff_name.empty())
        throw ContextError("render_domain: the coefficient algebra needs a name");
    return "domain " + name + " = " + domain_text(x, coeff_name);
}

std::string render_morphism(const std::string& name, const std::string& source, const std::string& target,
                            const SuperMorphism& m) {
    auto lines = morphism_lines(m);
    return "morphism " + name + " : " + source + " -> " + target + " = { " + join(lines) + (lines.empty() ? "}" : " }");
}

std::string render_text(const Value& v) {
    switch (v.kind) {
        case Kind::Algebra: return render_weil_body(*v.as_algebra());
        case Kind::Domain: {
            const auto& x = v.as_domain();
            return domain_text(x, x.has_trivial_coeff() ? "" : render_weil_body(*x.coeff()));
        }
        case Kind::Morphism: {
            const auto& m = v.as_morphism();
            auto lines = morphism_lines(m);
            return "{ " + join(lines) + (lines.empty() ? "}" : " }");
        }
        case Kind::Space: return v.as_space().to_string();
        case Kind::Bundle: {
            const auto& b = v.as_bundle();
            return "fibre " + b.fibre_dim() + ", total " + render_text(Value::domain(b.total));
        }
        case Kind::Element: return std::get<AlgebraElement>(v.data).to_string();
        case Kind::Function: return std::get<Superfunction>(v.data).to_string();
        case Kind::Scalar: return std::get<Scalar>(v.data).to_string();
        case Kind::Integer: return std::to_string(std::get<long long>(v.data));
        case Kind::Text: return std::get<std::string>(v.data);
        case Kind::Bool: return std::get<bool>(v.data) ? "true" : "false";
        case Kind::List: return "[" + join(std::get<std::vector<std::string>>(v.data)) + "]";
    }
    return "";
}

Json render_json(const Value& v) {
    switch (v.kind) {
        case Kind::Algebra: return algebra_json(*v.as_algebra());
        case Kind::Domain: return domain_json(v.as_domain());
        case Kind::Morphism: return morphism_json(v.as_morphism());
        case Kind::Space: {
            const auto& y = v.as_space();
            Json j;
            j["type"] = "space";
            j["ambient"] = domain_json(y.ambient());
            Json gens = Json::array();
            for (const auto& g : y.generators()) gens.push_back(g.to_string());
            j["generators"] = gens;
            Json support = Json::array();
            for (const auto& box : y.support()) {
                Json b = Json::array();
                for (const auto& iv : box) b.push_back(iv.to_string());
                support.push_back(b);
            }
            j["support"] = support;
            return j;
        }
        case Kind::Bundle: {
            const auto& b = v.as_bundle();
            Json j;
            j["type"] = "bundle";
            j["algebra"] = algebra_json(*b.algebra);
            j["base"] = domain_json(b.base);
            j["total"] = domain_json(b.total);
            j["fibre_dim"] = b.fibre_dim();
            Json coords = Json::array();
            const auto& bc = *b.base.coordinates();
            for (std::size_t bb = 1; bb < b.algebra->dim(); ++bb)
                for (std::size_t a = 0; a < b.slot.size(); ++a) {
                    Json c;
                    c["name"] = b.coordinate_name(a, bb);
                    c["base"] = a < bc.num_even() ? bc.even_names()[a] : bc.odd_names()[a - bc.num_even()];
                    c["basis"] = b.algebra->basis_name(bb);
                    c["parity"] = b.slot[a][bb] < b.total.p() ? "even" : "odd";
                    coords.push_back(c);
                }
            j["coordinates"] = coords;
            return j;
        }
        case Kind::Integer: return Json{{"type", "integer"}, {"value", render_text(v)}};
        case Kind::Bool: return Json{{"type", "bool"}, {"value", std::get<bool>(v.data)}};
        case Kind::List: return Json{{"type", "list"}, {"value", std::get<std::vector<std::string>>(v.data)}};
        default: return Json{{"type", to_string(v.kind)}, {"value", render_text(v)}};
    }
}

}  // namespace superkernel::dsl
