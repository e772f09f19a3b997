#include "hxplain/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hxplain {

using nlohmann::json;

namespace {

// Builds a DOM while keeping float lexemes as strings, so "0.1" stays 1/10.
class ExactSax : public nlohmann::json_sax<json> {
public:
    json root;
    std::size_t error_offset = 0;
    std::string error_message;

    bool null() override { return put(json(nullptr)); }
    bool boolean(bool v) override { return put(json(v)); }
    bool number_integer(number_integer_t v) override { return put(json(v)); }
    bool number_unsigned(number_unsigned_t v) override { return put(json(v)); }
    bool number_float(number_float_t, const string_t& s) override { return put(json(s)); }
    bool string(string_t& v) override { return put(json(v)); }
    bool binary(binary_t&) override { return put(json()); }

    bool start_object(std::size_t) override
    {
        json* slot = place(json::object());
        stack_.push_back(slot);
        return true;
    }
    bool key(string_t& k) override
    {
        json& obj = *stack_.back();
        if (obj.contains(k)) {
            error_message = "duplicate key \"" + k + "\"";
            return false;
        }
        key_ = k;
        return true;
    }
    bool end_object() override
    {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override
    {
        json* slot = place(json::array());
        stack_.push_back(slot);
        return true;
    }
    bool end_array() override
    {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override
    {
        error_offset = position;
        error_message = ex.what();
        return false;
    }

private:
    json* place(json v)
    {
        if (stack_.empty()) {
            root = std::move(v);
            return &root;
        }
        json& top = *stack_.back();
        if (top.is_array()) {
            top.push_back(std::move(v));
            return &top.back();
        }
        top[key_] = std::move(v);
        return &top[key_];
    }
    bool put(json v)
    {
        place(std::move(v));
        return true;
    }

    std::vector<json*> stack_;
    std::string key_;
};

[[noreturn]] void fail(const std::string& ptr, const std::string& msg)
{
    throw ParseError((ptr.empty() ? std::string("/") : ptr) + ": " + msg, ptr);
}

std::string escape_key(const std::string& k)
{
    std::string out;
    for (char c : k) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

std::string child(const std::string& ptr, const std::string& k) { return ptr + "/" + escape_key(k); }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        fail(ptr, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k))
            fail(child(ptr, k), "unknown field \"" + k + "\"");
}

const json& need(const json& j, const std::string& ptr, const char* k)
{
    auto it = j.find(k);
    if (it == j.end())
        fail(ptr, std::string("missing field \"") + k + "\"");
    return *it;
}

std::string get_string(const json& j, const std::string& ptr)
{
    if (!j.is_string())
        fail(ptr, "expected a string");
    return j.get<std::string>();
}

long long get_int(const json& j, const std::string& ptr)
{
    if (j.is_number_integer())
        return j.get<long long>();
    fail(ptr, "expected an integer");
}

Rat get_rat(const json& j, const std::string& ptr)
{
    if (j.is_number_unsigned()) {
        auto v = j.get<std::uint64_t>();
        return Rat(mpq_class(mpz_class(std::to_string(v), 10)));
    }
    if (j.is_number_integer())
        return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Rat r;
        if (Rat::try_parse(j.get<std::string>(), r))
            return r;
        fail(ptr, "not a rational: \"" + j.get<std::string>() + "\"");
    }
    fail(ptr, "expected a rational (integer, decimal or \"p/q\")");
}

LinearForm get_form(const json& j, const std::string& ptr)
{
    if (!j.is_object())
        fail(ptr, "expected an object of coefficients");
    LinearForm f;
    for (const auto& [k, v] : j.items()) {
        Rat r = get_rat(v, child(ptr, k));
        if (r.is_zero())
            fail(child(ptr, k), "zero coefficient");
        f[k] = r;
    }
    return f;
}

LinearConstraint get_constraint(const json& j, const std::string& ptr)
{
    only_keys(j, ptr, {"lhs", "op", "rhs"});
    LinearForm lhs = get_form(need(j, ptr, "lhs"), child(ptr, "lhs"));
    std::string ops = get_string(need(j, ptr, "op"), child(ptr, "op"));
    auto op = op_from_symbol(ops);
    if (!op || ops == "==")
        fail(child(ptr, "op"), "unknown operator \"" + ops + "\"");
    Rat rhs = get_rat(need(j, ptr, "rhs"), child(ptr, "rhs"));
    return LinearConstraint(std::move(lhs), *op, std::move(rhs));
}

std::vector<LinearConstraint> get_constraints(const json& j, const std::string& ptr)
{
    if (!j.is_array())
        fail(ptr, "expected an array of constraints");
    std::vector<LinearConstraint> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_constraint(j[i], child(ptr, i)));
    return out;
}

AffineExpr get_affine(const json& j, const std::string& ptr)
{
    if (!j.is_object())
        return AffineExpr::constant_of(get_rat(j, ptr));
    only_keys(j, ptr, {"coeffs", "const"});
    AffineExpr e;
    if (j.contains("coeffs"))
        e.coeffs = get_form(j["coeffs"], child(ptr, "coeffs"));
    if (j.contains("const"))
        e.constant = get_rat(j["const"], child(ptr, "const"));
    return e;
}

StateSet get_state_set(const json& j, const std::string& ptr)
{
    only_keys(j, ptr, {"location", "constraints"});
    StateSet s;
    s.location = get_string(need(j, ptr, "location"), child(ptr, "location"));
    if (j.contains("constraints"))
        s.constraints = get_constraints(j["constraints"], child(ptr, "constraints"));
    return s;
}

json rat_json(const Rat& r)
{
    if (r.is_integer() && r.num().fits_slong_p())
        return json(r.num().get_si());
    return json(r.str());
}

json form_json(const LinearForm& f)
{
    json o = json::object();
    for (const auto& [k, v] : f)
        o[k] = rat_json(v);
    return o;
}

json constraint_json(const LinearConstraint& c)
{
    return json{{"lhs", form_json(c.coeffs)}, {"op", op_symbol(c.op)}, {"rhs", rat_json(c.rhs)}};
}

json constraints_json(const std::vector<LinearConstraint>& cs)
{
    json a = json::array();
    for (const auto& c : cs)
        a.push_back(constraint_json(c));
    return a;
}

json state_set_json(const StateSet& s)
{
    return json{{"location", s.location}, {"constraints", constraints_json(s.constraints)}};
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

ModelDocument parse_model(const std::string& text)
{
    ExactSax sax;
    bool ok = json::sax_parse(text, &sax, json::input_format_t::json, true);
    if (!ok) {
        auto [line, col] = line_col(text, sax.error_offset);
        std::string msg = sax.error_message;
        if (auto p = msg.find("syntax error"); p != std::string::npos)
            msg = msg.substr(p);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg, line,
                         col);
    }
    const json& j = sax.root;
    only_keys(j, "", {"version", "metadata", "variables", "locations", "edges", "init", "goal", "depth",
                      "required_visits"});

    ModelDocument doc;
    doc.format_version = static_cast<int>(get_int(need(j, "", "version"), "/version"));
    if (doc.format_version != kFormatVersion)
        fail("/version", "unsupported format version " + std::to_string(doc.format_version));

    if (j.contains("metadata")) {
        const json& m = j["metadata"];
        if (!m.is_object())
            fail("/metadata", "expected an object");
        for (const auto& [k, v] : m.items())
            doc.metadata[k] = get_string(v, child("/metadata", k));
    }

    PlanningProblem& p = doc.problem;
    Automaton& a = p.automaton;
    const json& vars = need(j, "", "variables");
    if (!vars.is_array())
        fail("/variables", "expected an array");
    for (std::size_t i = 0; i < vars.size(); ++i)
        a.variables.push_back(get_string(vars[i], child("/variables", i)));

    const json& locs = need(j, "", "locations");
    if (!locs.is_object())
        fail("/locations", "expected an object keyed by location id");
    for (const auto& [id, lj] : locs.items()) {
        std::string ptr = child("/locations", id);
        only_keys(lj, ptr, {"invariant", "flow"});
        Location loc;
        loc.id = id;
        if (lj.contains("invariant"))
            loc.invariant = get_constraints(lj["invariant"], child(ptr, "invariant"));
        const json& flow = need(lj, ptr, "flow");
        if (!flow.is_object())
            fail(child(ptr, "flow"), "expected an object");
        for (const auto& [var, iv] : flow.items()) {
            std::string fp = child(child(ptr, "flow"), var);
            if (!iv.is_array() || iv.size() != 2)
                fail(fp, "expected [lo, hi]");
            loc.flow[var] = FlowInterval{get_rat(iv[0], child(fp, 0)), get_rat(iv[1], child(fp, 1))};
        }
        a.locations.emplace(id, std::move(loc));
    }

    const json& edges = need(j, "", "edges");
    if (!edges.is_array())
        fail("/edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string ptr = child("/edges", i);
        const json& ej = edges[i];
        only_keys(ej, ptr, {"id", "source", "target", "label", "guard", "reset"});
        Edge e;
        e.id = get_string(need(ej, ptr, "id"), child(ptr, "id"));
        e.source = get_string(need(ej, ptr, "source"), child(ptr, "source"));
        e.target = get_string(need(ej, ptr, "target"), child(ptr, "target"));
        e.label = ej.contains("label") ? get_string(ej["label"], child(ptr, "label")) : e.id;
        if (ej.contains("guard"))
            e.guard = get_constraints(ej["guard"], child(ptr, "guard"));
        if (ej.contains("reset")) {
            const json& r = ej["reset"];
            if (!r.is_object())
                fail(child(ptr, "reset"), "expected an object");
            for (const auto& [var, ex] : r.items())
                e.reset[var] = get_affine(ex, child(child(ptr, "reset"), var));
        }
        a.edges.push_back(std::move(e));
    }

    a.init = get_state_set(need(j, "", "init"), "/init");
    p.goal = get_state_set(need(j, "", "goal"), "/goal");
    long long depth = get_int(need(j, "", "depth"), "/depth");
    if (depth < 0 || depth > std::numeric_limits<int>::max())
        fail("/depth", "depth out of range");
    p.depth = static_cast<int>(depth);
    if (j.contains("required_visits")) {
        const json& rv = j["required_visits"];
        if (!rv.is_array())
            fail("/required_visits", "expected an array");
        for (std::size_t i = 0; i < rv.size(); ++i)
            p.required_visits.push_back(get_string(rv[i], child("/required_visits", i)));
    }

    auto report = validate_problem(p);
    if (!report.ok()) {
        std::string msg = "invalid model:";
        for (const auto& s : report.issues)
            msg += "\n  " + s;
        throw ValidationError(msg);
    }
    return doc;
}

std::string serialize_model(const ModelDocument& doc)
{
    const PlanningProblem& p = doc.problem;
    const Automaton& a = p.automaton;
    json j;
    j["version"] = doc.format_version;
    j["metadata"] = json::object();
    for (const auto& [k, v] : doc.metadata)
        j["metadata"][k] = v;
    j["variables"] = a.variables;
    json locs = json::object();
    for (const auto& [id, loc] : a.locations) {
        json flow = json::object();
        for (const auto& [var, iv] : loc.flow)
            flow[var] = json::array({rat_json(iv.lo), rat_json(iv.hi)});
        locs[id] = json{{"invariant", constraints_json(loc.invariant)}, {"flow", flow}};
    }
    j["locations"] = locs;
    json edges = json::array();
    for (const auto& e : a.edges) {
        json reset = json::object();
        for (const auto& [var, ex] : e.reset) {
            if (ex.coeffs.empty())
                reset[var] = rat_json(ex.constant);
            else
                reset[var] = json{{"coeffs", form_json(ex.coeffs)}, {"const", rat_json(ex.constant)}};
        }
        edges.push_back(json{{"id", e.id},
                             {"source", e.source},
                             {"target", e.target},
                             {"label", e.label},
                             {"guard", constraints_json(e.guard)},
                             {"reset", reset}});
    }
    j["edges"] = edges;
    j["init"] = state_set_json(a.init);
    j["goal"] = state_set_json(p.goal);
    j["depth"] = p.depth;
    j["required_visits"] = p.required_visits;
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << content;
    if (!out)
        throw Error("write failed for " + path);
}

ModelDocument load_model(const std::string& path) { return parse_model(read_file(path)); }

void save_model(const ModelDocument& doc, const std::string& path) { write_file(path, serialize_model(doc)); }

} // namespace hxplain
