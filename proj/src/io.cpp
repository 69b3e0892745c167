#include "dgpa/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dgpa {

using nlohmann::json;

namespace {

constexpr const char* kPresentationSchema = "dgpa-presentation/1";
constexpr const char* kTruncationSchema = "dgpa-ue-truncation/1";

[[noreturn]] void fail(const std::string& msg, const std::string& where) {
    throw parse_error(msg, where);
}

std::size_t byte_to_line(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("JSON syntax error: ") + e.what(),
             source + ":" + std::to_string(byte_to_line(text, e.byte)));
    }
}

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'", where);
    return *it;
}

GradedSpace parse_basis(const json& j, const std::string& where) {
    if (!j.is_array()) fail("basis must be an array of [name, degree] pairs", where);
    std::vector<BasisSymbol> symbols;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& item = j[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
            !item[1].is_number_integer())
            fail("expected [name, degree]", at);
        symbols.push_back({item[0].get<std::string>(), item[1].get<long long>()});
    }
    try {
        return GradedSpace(std::move(symbols));
    } catch (const value_error& e) {
        fail(e.what(), where);
    }
}

Element parse_element(const json& j, const GradedSpace& sp, const Field& f,
                      const std::string& where) {
    if (!j.is_array()) fail("expected a [coeff, symbol] list", where);
    Element e(sp);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& term = j[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
            !term[1].is_string())
            fail("expected [coeff, symbol]", at);
        auto idx = sp.find(term[1].get<std::string>());
        if (!idx) fail("unknown symbol '" + term[1].get<std::string>() + "'", at);
        try {
            e.add_term(*idx, Scalar::parse(f, term[0].get<std::string>()));
        } catch (const value_error& ve) {
            fail(ve.what(), at);
        }
    }
    return e;
}

BilinearOp parse_table(const json& j, const json* undefined_list, const GradedSpace& lhs,
                       const GradedSpace& rhs, const GradedSpace& target, long long degree,
                       const Field& f, const std::string& where) {
    std::map<BilinearOp::Key, Element> entries;
    if (!j.is_array()) fail("expected an array of [x, y, value] triples", where);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_string())
            fail("expected [x, y, value]", at);
        auto xi = lhs.find(row[0].get<std::string>());
        if (!xi) fail("unknown symbol '" + row[0].get<std::string>() + "'", at);
        auto yi = rhs.find(row[1].get<std::string>());
        if (!yi) fail("unknown symbol '" + row[1].get<std::string>() + "'", at);
        entries[{*xi, *yi}] = parse_element(row[2], target, f, at);
    }
    if (!undefined_list) {
        try {
            return BilinearOp::total(lhs, rhs, target, degree, std::move(entries));
        } catch (const value_error& e) {
            fail(e.what(), where);
        }
    }
    // partial table: list every defined cell explicitly, zeros included
    std::set<BilinearOp::Key> undef;
    for (std::size_t i = 0; i < undefined_list->size(); ++i) {
        const json& row = (*undefined_list)[i];
        std::string at = where + "_undefined[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != 2) fail("expected [x, y]", at);
        auto xi = lhs.find(row[0].get<std::string>());
        auto yi = rhs.find(row[1].get<std::string>());
        if (!xi || !yi) fail("unknown symbol in undefined-cell list", at);
        undef.insert({*xi, *yi});
    }
    for (std::uint32_t i = 0; i < lhs.dim(); ++i)
        for (std::uint32_t j2 = 0; j2 < rhs.dim(); ++j2) {
            BilinearOp::Key key{i, j2};
            if (undef.count(key)) {
                entries.erase(key);
                continue;
            }
            if (!entries.count(key)) entries.emplace(key, Element(target));
        }
    try {
        return BilinearOp::partial(lhs, rhs, target, degree, std::move(entries));
    } catch (const value_error& e) {
        fail(e.what(), where);
    }
}

GradedLinearMap parse_diff(const json* j, const GradedSpace& sp, const Field& f,
                           const std::string& where) {
    std::vector<Element> images(sp.dim(), Element(sp));
    if (j) {
        if (!j->is_array()) fail("expected an array of [symbol, value] pairs", where);
        for (std::size_t i = 0; i < j->size(); ++i) {
            const json& row = (*j)[i];
            std::string at = where + "[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != 2 || !row[0].is_string())
                fail("expected [symbol, value]", at);
            auto xi = sp.find(row[0].get<std::string>());
            if (!xi) fail("unknown symbol '" + row[0].get<std::string>() + "'", at);
            images[*xi] = parse_element(row[1], sp, f, at);
        }
    }
    try {
        return GradedLinearMap(sp, sp, 1, std::move(images));
    } catch (const value_error& e) {
        fail(e.what(), where);
    }
}

json element_json(const Element& e) {
    json out = json::array();
    for (const auto& [idx, c] : e.coeffs())
        out.push_back({c.to_string(), e.space().name(idx)});
    return out;
}

std::pair<json, json> table_json(const BilinearOp& op) {
    json rows = json::array();
    json undef = json::array();
    for (const auto& [key, value] : op.entries()) {
        if (op.is_total() && value.is_zero()) continue;
        rows.push_back({op.lhs().name(key.first), op.rhs().name(key.second),
                        element_json(value)});
    }
    if (!op.is_total())
        for (std::uint32_t i = 0; i < op.lhs().dim(); ++i)
            for (std::uint32_t j = 0; j < op.rhs().dim(); ++j)
                if (!op.defined(i, j)) undef.push_back({op.lhs().name(i), op.rhs().name(j)});
    return {std::move(rows), std::move(undef)};
}

json diff_json(const GradedLinearMap& d) {
    json rows = json::array();
    for (std::uint32_t i = 0; i < d.source().dim(); ++i)
        if (!d.image(i).is_zero())
            rows.push_back({d.source().name(i), element_json(d.image(i))});
    return rows;
}

json basis_json(const GradedSpace& sp) {
    json out = json::array();
    for (const auto& s : sp.symbols()) out.push_back({s.name, s.degree});
    return out;
}

} // namespace

ParsedPresentation parse_presentation(const std::string& text, const std::string& source) {
    json j = parse_json(text, source);
    ParsedPresentation out;
    std::string kind = need(j, "kind", source).get<std::string>();
    try {
        out.field = Field::parse(need(j, "field", source).get<std::string>());
    } catch (const value_error& e) {
        fail(e.what(), source + ":field");
    }
    const Field& F = out.field;

    GradedSpace sp = parse_basis(need(j, "basis", source), source + ":basis");
    const json* dj = j.contains("differential") ? &j["differential"] : nullptr;
    GradedLinearMap diff = parse_diff(dj, sp, F, source + ":differential");

    if (kind == "lie") {
        out.kind = ParsedPresentation::Kind::lie;
        long long p = need(j, "bracket_degree", source).get<long long>();
        BilinearOp bracket =
            parse_table(need(j, "bracket", source),
                        j.contains("bracket_undefined") ? &j["bracket_undefined"] : nullptr,
                        sp, sp, sp, p, F, source + ":bracket");
        try {
            out.lie = DGLieData(F, sp, std::move(bracket), p, std::move(diff));
        } catch (const value_error& e) {
            fail(e.what(), source);
        }
        return out;
    }

    std::string unit_name = need(j, "unit", source).get<std::string>();
    auto unit = sp.find(unit_name);
    if (!unit) fail("unknown unit symbol '" + unit_name + "'", source + ":unit");
    bool commutative = j.value("commutative", true);
    BilinearOp product =
        parse_table(need(j, "product", source),
                    j.contains("product_undefined") ? &j["product_undefined"] : nullptr, sp,
                    sp, sp, 0, F, source + ":product");
    DGAlgebraData alg = [&] {
        try {
            return DGAlgebraData(F, sp, *unit, std::move(product), diff, commutative);
        } catch (const value_error& e) {
            fail(e.what(), source);
        }
    }();

    if (kind == "deformation") {
        out.kind = ParsedPresentation::Kind::deformation;
        const json& corr = need(j, "corrections", source);
        if (!corr.is_array()) fail("corrections must be an array of tables", source);
        std::vector<BilinearOp> tables;
        for (std::size_t i = 0; i < corr.size(); ++i)
            tables.push_back(parse_table(corr[i], nullptr, sp, sp, sp, 0, F,
                                         source + ":corrections[" + std::to_string(i) + "]"));
        try {
            out.deformation = DeformationData(std::move(alg), std::move(tables));
        } catch (const value_error& e) {
            fail(e.what(), source);
        }
        return out;
    }

    if (kind != "algebra") fail("unknown kind '" + kind + "'", source + ":kind");
    out.kind = ParsedPresentation::Kind::algebra;
    long long p = need(j, "bracket_degree", source).get<long long>();
    BilinearOp bracket =
        parse_table(j.contains("bracket") ? j["bracket"] : json::array(),
                    j.contains("bracket_undefined") ? &j["bracket_undefined"] : nullptr, sp,
                    sp, sp, p, F, source + ":bracket");
    DGLieData lie = [&] {
        try {
            return DGLieData(F, sp, std::move(bracket), p, diff);
        } catch (const value_error& e) {
            fail(e.what(), source);
        }
    }();
    try {
        out.algebra = DGPoissonData(std::move(alg), std::move(lie));
    } catch (const value_error& e) {
        fail(e.what(), source);
    }

    if (j.contains("module")) {
        const json& m = j["module"];
        std::string mw = source + ":module";
        GradedSpace msp = parse_basis(need(m, "basis", mw), mw + ".basis");
        BilinearOp action = parse_table(
            m.contains("action") ? m["action"] : json::array(),
            m.contains("action_undefined") ? &m["action_undefined"] : nullptr,
            sp, msp, msp, 0, F, mw + ".action");
        BilinearOp lie_action = parse_table(
            m.contains("lie_action") ? m["lie_action"] : json::array(),
            m.contains("lie_action_undefined") ? &m["lie_action_undefined"] : nullptr,
            sp, msp, msp, p, F, mw + ".lie_action");
        const json* md = m.contains("differential") ? &m["differential"] : nullptr;
        GradedLinearMap mdiff = [&] {
            std::vector<Element> images(msp.dim(), Element(msp));
            if (md) {
                for (std::size_t i = 0; i < md->size(); ++i) {
                    const json& row = (*md)[i];
                    std::string at = mw + ".differential[" + std::to_string(i) + "]";
                    auto xi = msp.find(row.at(0).get<std::string>());
                    if (!xi) fail("unknown module symbol", at);
                    images[*xi] = parse_element(row.at(1), msp, F, at);
                }
            }
            try {
                return GradedLinearMap(msp, msp, 1, std::move(images));
            } catch (const value_error& e) {
                fail(e.what(), mw + ".differential");
            }
        }();
        try {
            out.module = DGPoissonModuleData(*out.algebra, msp, std::move(action),
                                             std::move(lie_action), std::move(mdiff));
        } catch (const value_error& e) {
            fail(e.what(), mw);
        }
    }
    return out;
}

ParsedPresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str(), path);
}

std::string serialize_algebra(const DGPoissonData& a, const DGPoissonModuleData* module) {
    json j;
    j["schema"] = kPresentationSchema;
    j["kind"] = "algebra";
    j["field"] = a.field().to_string();
    j["bracket_degree"] = a.p();
    j["basis"] = basis_json(a.space());
    j["unit"] = a.space().name(a.algebra.unit);
    j["commutative"] = a.algebra.commutative;
    auto [prod, prod_undef] = table_json(a.algebra.product);
    j["product"] = std::move(prod);
    if (!prod_undef.empty()) j["product_undefined"] = std::move(prod_undef);
    auto [brak, brak_undef] = table_json(a.lie.bracket);
    j["bracket"] = std::move(brak);
    if (!brak_undef.empty()) j["bracket_undefined"] = std::move(brak_undef);
    j["differential"] = diff_json(a.algebra.differential);
    if (module) {
        json m;
        m["basis"] = basis_json(module->space);
        auto [act, act_undef] = table_json(module->action);
        m["action"] = std::move(act);
        if (!act_undef.empty()) m["action_undefined"] = std::move(act_undef);
        auto [lact, lact_undef] = table_json(module->lie_action);
        m["lie_action"] = std::move(lact);
        if (!lact_undef.empty()) m["lie_action_undefined"] = std::move(lact_undef);
        m["differential"] = diff_json(module->differential);
        j["module"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

std::string serialize_lie(const DGLieData& l) {
    json j;
    j["schema"] = kPresentationSchema;
    j["kind"] = "lie";
    j["field"] = l.field.to_string();
    j["bracket_degree"] = l.bracket_degree;
    j["basis"] = basis_json(l.space);
    auto [brak, brak_undef] = table_json(l.bracket);
    j["bracket"] = std::move(brak);
    if (!brak_undef.empty()) j["bracket_undefined"] = std::move(brak_undef);
    j["differential"] = diff_json(l.differential);
    return j.dump(2) + "\n";
}

std::string serialize_deformation(const DeformationData& d) {
    json j;
    j["schema"] = kPresentationSchema;
    j["kind"] = "deformation";
    j["field"] = d.base.field.to_string();
    j["basis"] = basis_json(d.base.space);
    j["unit"] = d.base.space.name(d.base.unit);
    j["commutative"] = d.base.commutative;
    auto [prod, prod_undef] = table_json(d.base.product);
    j["product"] = std::move(prod);
    j["differential"] = diff_json(d.base.differential);
    json corr = json::array();
    for (const auto& b : d.corrections) {
        auto [rows, undef] = table_json(b);
        corr.push_back(std::move(rows));
    }
    j["corrections"] = std::move(corr);
    return j.dump(2) + "\n";
}

std::string serialize_truncation(const UETruncation& t) {
    json j;
    j["schema"] = kTruncationSchema;
    j["field"] = t.field.to_string();
    j["bracket_degree"] = t.gens.bracket_degree();
    j["max_len"] = t.max_len;
    j["base_basis"] = basis_json(t.gens.base());
    json words = json::array();
    for (const auto& w : t.basis) {
        json word = json::array();
        for (auto id : w)
            word.push_back({t.gens.is_m(id) ? "M" : "H", t.gens.base().name(t.gens.base_of(id))});
        words.push_back(std::move(word));
    }
    j["basis"] = std::move(words);
    json prod = json::array(), prod_undef = json::array();
    for (std::uint32_t i = 0; i < t.dim(); ++i)
        for (std::uint32_t k = 0; k < t.dim(); ++k) {
            if (!t.product[i][k]) {
                prod_undef.push_back({i, k});
                continue;
            }
            json vec = json::array();
            for (const auto& [m, c] : *t.product[i][k]) vec.push_back({c.to_string(), m});
            prod.push_back({i, k, std::move(vec)});
        }
    j["product"] = std::move(prod);
    j["product_undefined"] = std::move(prod_undef);
    json diff = json::array(), diff_undef = json::array();
    for (std::uint32_t i = 0; i < t.dim(); ++i) {
        if (!t.diff[i]) {
            diff_undef.push_back(i);
            continue;
        }
        json vec = json::array();
        for (const auto& [m, c] : *t.diff[i]) vec.push_back({c.to_string(), m});
        diff.push_back({i, std::move(vec)});
    }
    j["differential"] = std::move(diff);
    j["differential_undefined"] = std::move(diff_undef);
    j["provenance"] = t.provenance == UETruncation::Provenance::rewriting ? "rewriting" : "oracle";
    if (t.stable)
        j["stable"] = *t.stable;
    else
        j["stable"] = nullptr;
    j["diagnostics"] = {{"relations_checked", t.diagnostics.relations_checked},
                        {"relations_deferred", t.diagnostics.relations_deferred},
                        {"d2_checked", t.diagnostics.d2_checked},
                        {"d2_deferred", t.diagnostics.d2_deferred},
                        {"failures", t.diagnostics.failures}};
    return j.dump(2) + "\n";
}

UETruncation parse_truncation(const std::string& text, const std::string& source) {
    json j = parse_json(text, source);
    if (j.value("schema", "") != kTruncationSchema)
        fail("not a truncation document", source + ":schema");
    Field f = Field::parse(need(j, "field", source).get<std::string>());
    GradedSpace base = parse_basis(need(j, "base_basis", source), source + ":base_basis");
    long long p = need(j, "bracket_degree", source).get<long long>();
    UETruncation t{f, GenSet(base, p), need(j, "max_len", source).get<std::uint32_t>(),
                   {}, {}, {}, {}, UETruncation::Provenance::rewriting, std::nullopt, {}};
    for (const auto& word : need(j, "basis", source)) {
        Word w;
        for (const auto& letter : word) {
            std::string kind = letter.at(0).get<std::string>();
            auto idx = base.find(letter.at(1).get<std::string>());
            if (!idx) fail("unknown base symbol in word", source + ":basis");
            w.push_back(kind == "M" ? t.gens.m_id(*idx) : t.gens.h_id(*idx));
        }
        t.index.emplace(w, static_cast<std::uint32_t>(t.basis.size()));
        t.basis.push_back(std::move(w));
    }
    const auto dim = static_cast<std::uint32_t>(t.basis.size());
    t.product.assign(dim, std::vector<std::optional<UETruncation::QVec>>(dim));
    for (const auto& row : need(j, "product", source)) {
        UETruncation::QVec v;
        for (const auto& term : row.at(2))
            v.emplace(term.at(1).get<std::uint32_t>(),
                      Scalar::parse(f, term.at(0).get<std::string>()));
        t.product[row.at(0).get<std::uint32_t>()][row.at(1).get<std::uint32_t>()] =
            std::move(v);
    }
    for (const auto& cell : j.value("product_undefined", json::array()))
        t.product[cell.at(0).get<std::uint32_t>()][cell.at(1).get<std::uint32_t>()] =
            std::nullopt;
    t.diff.assign(dim, std::nullopt);
    for (const auto& row : need(j, "differential", source)) {
        UETruncation::QVec v;
        for (const auto& term : row.at(1))
            v.emplace(term.at(1).get<std::uint32_t>(),
                      Scalar::parse(f, term.at(0).get<std::string>()));
        t.diff[row.at(0).get<std::uint32_t>()] = std::move(v);
    }
    t.provenance = need(j, "provenance", source).get<std::string>() == "oracle"
                       ? UETruncation::Provenance::oracle
                       : UETruncation::Provenance::rewriting;
    if (j.contains("stable") && !j["stable"].is_null()) t.stable = j["stable"].get<bool>();
    if (j.contains("diagnostics")) {
        const json& d = j["diagnostics"];
        t.diagnostics.relations_checked = d.value("relations_checked", std::size_t{0});
        t.diagnostics.relations_deferred = d.value("relations_deferred", std::size_t{0});
        t.diagnostics.d2_checked = d.value("d2_checked", std::size_t{0});
        t.diagnostics.d2_deferred = d.value("d2_deferred", std::size_t{0});
        if (d.contains("failures"))
            t.diagnostics.failures = d["failures"].get<std::vector<std::string>>();
    }
    return t;
}

json report_json(const VerificationReport& rep) {
    json out;
    out["status"] = rep.pass() ? "pass" : "fail";
    out["checked"] = rep.checked;
    out["deferred"] = rep.skipped;
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back({{"axiom", viol.axiom},
                     {"witness", viol.witness},
                     {"discrepancy", viol.discrepancy.to_string()}});
    out["violations"] = std::move(v);
    return out;
}

json dims_json(const std::map<std::pair<std::uint32_t, long long>, std::size_t>& dims) {
    json out = json::array();
    for (const auto& [key, count] : dims) out.push_back({key.first, key.second, count});
    return out;
}

json certificate_json(const IsoCertificate& cert) {
    json out;
    out["status"] = cert.verified() ? "verified" : "not-verified";
    out["lhs"] = cert.lhs_label;
    out["rhs"] = cert.rhs_label;
    out["relations_preserved"] = cert.relations_preserved;
    out["differential_preserved"] = cert.differential_preserved;
    out["bijective_on_window"] = cert.bijective_on_window;
    out["dims_match"] = cert.dims_match;
    out["lengths_comparable"] = cert.lengths_comparable;
    if (cert.epsilon) out["epsilon"] = *cert.epsilon;
    out["checked"] = cert.checked;
    out["deferred"] = cert.deferred;
    out["coverage"] = cert.coverage();
    out["lhs_dims"] = dims_json(cert.lhs_dims);
    out["rhs_dims"] = dims_json(cert.rhs_dims);
    out["findings"] = cert.findings;
    return out;
}

json comparison_json(const OracleComparison& cmp) {
    json out;
    out["status"] = cmp.agree() ? "agree" : "disagree";
    out["hard_disagreement"] = cmp.hard_disagreement();
    if (cmp.stable)
        out["stable"] = *cmp.stable;
    else
        out["stable"] = nullptr;
    out["rewrite_dims"] = dims_json(cmp.rewrite_dims);
    out["oracle_dims"] = dims_json(cmp.oracle_dims);
    out["findings"] = cmp.findings;
    return out;
}

} // namespace dgpa
