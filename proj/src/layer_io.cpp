#include "tropreg/layer_io.hpp"

#include <fstream>
#include <sstream>

#include "tropreg/random.hpp"

namespace tropreg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        fail(where, "expected a number, got " + std::string(v.type_name()));
    }
    return v.get<double>();
}

Vector vector_of(const json& v, const std::string& where)
{
    if (!v.is_array()) {
        fail(where, "expected an array of numbers");
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = number(v[i], where + "[" + std::to_string(i) + "]");
    }
    return out;
}

void require_len(const Vector& v, std::size_t n, const std::string& where)
{
    if (static_cast<std::size_t>(v.size()) != n) {
        fail(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
}

json to_array(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Unit unit_from_json(const json& u, std::size_t n, const std::string& where)
{
    const auto& kind_v = field(u, "kind", where);
    if (!kind_v.is_string()) {
        fail(where + ".kind", "expected a string");
    }
    const auto kind = kind_v.get<std::string>();
    try {
        if (kind == "relu" || kind == "lrelu") {
            Vector w = vector_of(field(u, "w", where), where + ".w");
            require_len(w, n, where + ".w");
            const double b = number(field(u, "b", where), where + ".b");
            if (kind == "relu") {
                return relu_unit(w, b);
            }
            const double alpha = number(field(u, "alpha", where), where + ".alpha");
            if (!(alpha > 0.0 && alpha < 1.0)) {
                fail(where + ".alpha", "must lie in (0, 1), got " + std::to_string(alpha));
            }
            return leaky_relu_unit(w, b, alpha);
        }
        if (kind == "maxout") {
            const auto& W = field(u, "W", where);
            if (!W.is_array() || W.empty()) {
                fail(where + ".W", "expected a nonempty array of rows");
            }
            Vector b = vector_of(field(u, "b", where), where + ".b");
            require_len(b, W.size(), where + ".b");
            Matrix M(static_cast<Eigen::Index>(W.size()), static_cast<Eigen::Index>(n));
            for (std::size_t r = 0; r < W.size(); ++r) {
                const auto row_where = where + ".W[" + std::to_string(r) + "]";
                Vector row = vector_of(W[r], row_where);
                require_len(row, n, row_where);
                M.row(static_cast<Eigen::Index>(r)) = row.transpose();
            }
            return maxout_unit(M, b);
        }
        if (kind == "raw") {
            const auto& terms = field(u, "terms", where);
            if (!terms.is_array() || terms.empty()) {
                fail(where + ".terms", "expected a nonempty array of terms");
            }
            std::vector<TropicalTerm> out;
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const auto tw = where + ".terms[" + std::to_string(t) + "]";
                Vector c = vector_of(field(terms[t], "c", tw), tw + ".c");
                require_len(c, n, tw + ".c");
                out.push_back({number(field(terms[t], "b", tw), tw + ".b"), std::move(c)});
            }
            return raw_unit(TropicalPolynomial(n, std::move(out)));
        }
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) {
            throw;
        }
        fail(where, msg);
    }
    fail(where + ".kind", "unknown unit kind \"" + kind + "\"");
}

} // namespace

UnitKind parse_unit_kind(const std::string& s)
{
    if (s == "relu") {
        return UnitKind::relu;
    }
    if (s == "lrelu") {
        return UnitKind::leaky_relu;
    }
    if (s == "maxout") {
        return UnitKind::maxout;
    }
    if (s == "raw") {
        return UnitKind::raw;
    }
    throw ValidationError("unknown unit kind \"" + s + "\"");
}

LayerSpec layer_from_json(const json& doc)
{
    const auto& ver = field(doc, "schema_version", "layer");
    if (!ver.is_number_integer() || ver.get<int>() != kLayerSchemaVersion) {
        fail("layer.schema_version", "unsupported schema version " + ver.dump());
    }
    const auto& inputs = field(doc, "inputs", "layer");
    if (!inputs.is_number_integer() || inputs.get<long long>() < 1) {
        fail("layer.inputs", "expected a positive integer");
    }
    const auto n = inputs.get<std::size_t>();
    const auto& units = field(doc, "units", "layer");
    if (!units.is_array() || units.empty()) {
        fail("layer.units", "expected a nonempty array");
    }
    std::vector<Unit> out;
    out.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        out.push_back(unit_from_json(units[i], n, "units[" + std::to_string(i) + "]"));
    }
    return LayerSpec(n, std::move(out));
}

json layer_to_json(const LayerSpec& layer)
{
    json units = json::array();
    for (const auto& u : layer.units()) {
        const auto& p = u.poly;
        json j;
        j["kind"] = to_string(u.kind);
        switch (u.kind) {
        case UnitKind::relu:
        case UnitKind::leaky_relu: {
            // rank 1 only when w = 0 and b = 0 (both branches coincide)
            const auto& active = p.rank() == 2 ? p.term(1) : TropicalTerm{0.0, Vector::Zero(p.input_dim())};
            j["w"] = to_array(active.coeffs);
            j["b"] = p.rank() == 2 ? active.bias : 0.0;
            if (u.kind == UnitKind::leaky_relu) {
                j["alpha"] = u.alpha;
            }
            break;
        }
        case UnitKind::maxout: {
            json W = json::array();
            json b = json::array();
            for (const auto& t : p.terms()) {
                W.push_back(to_array(t.coeffs));
                b.push_back(t.bias);
            }
            j["W"] = std::move(W);
            j["b"] = std::move(b);
            break;
        }
        case UnitKind::raw: {
            json terms = json::array();
            for (const auto& t : p.terms()) {
                terms.push_back({{"b", t.bias}, {"c", to_array(t.coeffs)}});
            }
            j["terms"] = std::move(terms);
            break;
        }
        }
        units.push_back(std::move(j));
    }
    return {{"schema_version", kLayerSchemaVersion}, {"inputs", layer.input_dim()}, {"units", std::move(units)}};
}

LayerSpec parse_layer_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("layer file is not valid JSON: ") + e.what());
    }
    return layer_from_json(doc);
}

LayerSpec parse_layer(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open layer file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_layer_text(buf.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string serialize_layer(const LayerSpec& layer) { return layer_to_json(layer).dump(2) + "\n"; }

void write_layer(const std::filesystem::path& path, const LayerSpec& layer)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write layer file " + path.string());
    }
    out << serialize_layer(layer);
}

LayerSpec generate_layer(UnitKind kind, std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed, double alpha)
{
    if (n < 1 || m < 1) {
        throw ValidationError("generate_layer: n and m must be at least 1");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    std::vector<Unit> units;
    units.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Substream rng(seed, i);
        switch (kind) {
        case UnitKind::relu:
        case UnitKind::leaky_relu: {
            Vector w = rng.normal_vector(dim);
            const double b = rng.normal_vector(1)(0);
            units.push_back(kind == UnitKind::relu ? relu_unit(w, b) : leaky_relu_unit(w, b, alpha));
            break;
        }
        case UnitKind::maxout: {
            if (k < 2) {
                throw ValidationError("generate_layer: maxout rank k must be at least 2");
            }
            Matrix W(static_cast<Eigen::Index>(k), dim);
            for (Eigen::Index r = 0; r < W.rows(); ++r) {
                W.row(r) = rng.normal_vector(dim).transpose();
            }
            units.push_back(maxout_unit(W, rng.normal_vector(static_cast<Eigen::Index>(k))));
            break;
        }
        case UnitKind::raw:
            throw ValidationError("generate_layer: raw units cannot be generated");
        }
    }
    return LayerSpec(n, std::move(units));
}

} // namespace tropreg
