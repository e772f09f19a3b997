#include "hxplain/benchmarks.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hxplain {

namespace {

using Params = std::map<std::string, std::string>;

LinearConstraint le(const std::string& v, Rat r) { return LinearConstraint({{v, Rat(1)}}, Op::LE, std::move(r)); }
LinearConstraint ge(const std::string& v, Rat r) { return LinearConstraint({{v, Rat(1)}}, Op::GE, std::move(r)); }
LinearConstraint eq(const std::string& v, Rat r) { return LinearConstraint({{v, Rat(1)}}, Op::EQ, std::move(r)); }
LinearConstraint lt(const std::string& v, Rat r) { return LinearConstraint({{v, Rat(1)}}, Op::LT, std::move(r)); }
LinearConstraint gt(const std::string& v, Rat r) { return LinearConstraint({{v, Rat(1)}}, Op::GT, std::move(r)); }

FlowInterval rate(Rat v) { return FlowInterval{v, v}; }
FlowInterval band(Rat lo, Rat hi) { return FlowInterval{std::move(lo), std::move(hi)}; }

std::string loc(int k) { return "l" + std::to_string(k); }

const std::map<std::string, Params>& defaults_table()
{
    static const std::map<std::string, Params> table = {
        {"warehouse",
         {{"rows", "4"},
          {"cols", "6"},
          {"start", "7"},
          {"goal", "18"},
          {"charger", "23"},
          {"variant", "human"},
          {"blocked", ""},
          {"oil", ""},
          {"charge", "10"},
          {"capacity", "10"},
          {"floor", "1/10"},
          {"rate", "2"},
          {"oil_rate", "4"},
          {"speed", "1"},
          {"oil_speed", "2/3"},
          {"depth", "8"}}},
        {"rover",
         {{"rows", "5"},
          {"cols", "5"},
          {"start", "11"},
          {"goal", "25"},
          {"blocked", "4,7,9,12,16,18"},
          {"sampling", "1,24"},
          {"inclined", "2,6,8"},
          {"charge", "10"},
          {"capacity", "10"},
          {"floor", "0"},
          {"rate", "1"},
          {"sampling_rate", "2"},
          {"inclined_rate", "3"},
          {"speed", "1"},
          {"depth", "15"}}},
        {"water_level",
         {{"high", "10"},
          {"low", "5"},
          {"delay", "2"},
          {"fill_rate", "1"},
          {"drain_rate", "2"},
          {"overflow", "12"},
          {"underflow", "1"},
          {"level", "1"},
          {"depth", "20"}}},
        {"nav", {{"start", "1"}, {"goal", "6"}, {"x", "1/5"}, {"y", "1/5"}, {"spread", "1/5"}, {"depth", "10"}}},
        {"nrs",
         {{"low", "510"},
          {"high", "550"},
          {"recovery", "20"},
          {"heat_min", "1"},
          {"heat_max", "2"},
          {"cool_min", "1"},
          {"cool_max", "2"},
          {"depth", "15"}}},
        {"city", {{"charge", "20"}, {"goal", "H"}, {"depth", "10"}}},
    };
    return table;
}

// Merged, validated parameter view.
class ParamView {
public:
    ParamView(const BenchmarkSpec& spec) : family_(spec.family)
    {
        auto it = defaults_table().find(spec.family);
        if (it == defaults_table().end())
            throw InvalidSpec("unknown benchmark family '" + spec.family + "'");
        values_ = it->second;
        for (const auto& [k, v] : spec.parameters) {
            if (!values_.count(k))
                throw InvalidSpec("unknown parameter '" + k + "' for family " + spec.family);
            values_[k] = v;
            given_.insert(k);
        }
    }

    [[nodiscard]] bool given(const std::string& k) const { return given_.count(k) > 0; }
    [[nodiscard]] const std::string& str(const std::string& k) const { return values_.at(k); }

    [[nodiscard]] Rat rat(const std::string& k) const
    {
        Rat r;
        if (!Rat::try_parse(str(k), r))
            throw InvalidSpec("parameter '" + k + "' is not a rational number: " + str(k));
        return r;
    }

    [[nodiscard]] int integer(const std::string& k, int lo, int hi) const
    {
        Rat r = rat(k);
        if (!r.is_integer() || r < Rat(lo) || r > Rat(hi))
            throw InvalidSpec("parameter '" + k + "' must be an integer in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        return static_cast<int>(r.num().get_si());
    }

    [[nodiscard]] Rat positive(const std::string& k) const
    {
        Rat r = rat(k);
        if (r.sign() <= 0)
            throw InvalidSpec("parameter '" + k + "' must be positive");
        return r;
    }

    [[nodiscard]] std::set<int> cells(const std::string& k, int n) const
    {
        std::set<int> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty())
                continue;
            Rat r;
            if (!Rat::try_parse(item, r) || !r.is_integer() || r < Rat(1) || r > Rat(n))
                throw InvalidSpec("parameter '" + k + "': bad cell '" + item + "'");
            out.insert(static_cast<int>(r.num().get_si()));
        }
        return out;
    }

private:
    std::string family_;
    Params values_;
    std::set<std::string> given_;
};

struct GridSpec {
    std::string name;
    int rows = 0;
    int cols = 0;
    int start = 0;
    int goal = 0;
    int charger = 0; // 0 = none
    std::set<int> blocked;
    std::map<int, Rat> rate;  // depletion per cell
    std::map<int, Rat> speed; // per-axis speed per cell
    std::map<int, char> mark; // layout marker per cell
    Rat charge, capacity, floor;
    int depth = 0;
    std::vector<int> visits;
};

struct Door {
    Rat x, y;
};

// Rectangle of cell k is [c-1, c] x [r-1, r] with 1-based row r and column c.
ModelDocument build_grid(const GridSpec& g)
{
    const int n = g.rows * g.cols;
    auto row = [&](int k) { return (k - 1) / g.cols + 1; };
    auto col = [&](int k) { return (k - 1) % g.cols + 1; };
    const Rat half(1, 2);

    PlanningProblem p;
    Automaton& a = p.automaton;
    a.variables = {"x", "y", "c"};
    // Blocked cells stay as locations without incident edges.
    for (int k = 1; k <= n; ++k) {
        Location l;
        l.id = loc(k);
        const int r = row(k), c = col(k);
        l.invariant = {ge("x", Rat(c - 1)), le("x", Rat(c)), ge("y", Rat(r - 1)), le("y", Rat(r)),
                       ge("c", g.floor),   le("c", g.capacity)};
        const Rat& s = g.speed.at(k);
        l.flow["x"] = band(-s, s);
        l.flow["y"] = band(-s, s);
        l.flow["c"] = rate(-g.rate.at(k));
        a.locations.emplace(l.id, std::move(l));
    }

    struct Dir {
        int dr, dc;
    };
    const Dir dirs[] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}}; // right, up, left, down
    for (int k = 1; k <= n; ++k) {
        if (g.blocked.count(k))
            continue;
        const int r = row(k), c = col(k);
        for (const auto& d : dirs) {
            const int r2 = r + d.dr, c2 = c + d.dc;
            if (r2 < 1 || r2 > g.rows || c2 < 1 || c2 > g.cols)
                continue;
            const int k2 = (r2 - 1) * g.cols + c2;
            if (g.blocked.count(k2))
                continue;
            Door door;
            if (d.dc != 0) {
                door.x = Rat(d.dc > 0 ? c : c - 1);
                door.y = Rat(r) - half;
            } else {
                door.x = Rat(c) - half;
                door.y = Rat(d.dr > 0 ? r : r - 1);
            }
            Edge e;
            e.id = "e" + std::to_string(k) + "_" + std::to_string(k2);
            e.source = loc(k);
            e.target = loc(k2);
            e.label = "move_" + e.source + "_" + e.target;
            e.guard = {eq("x", door.x), eq("y", door.y)};
            e.reset["x"] = AffineExpr::constant_of(door.x);
            e.reset["y"] = AffineExpr::constant_of(door.y);
            if (k2 == g.charger)
                e.reset["c"] = AffineExpr::constant_of(g.capacity);
            a.edges.push_back(std::move(e));
        }
    }

    auto center = [&](int k, bool with_charge) {
        std::vector<LinearConstraint> cs = {eq("x", Rat(col(k)) - half), eq("y", Rat(row(k)) - half)};
        if (with_charge)
            cs.push_back(eq("c", g.charge));
        return cs;
    };
    a.init = StateSet{loc(g.start), center(g.start, true)};
    p.goal = StateSet{loc(g.goal), center(g.goal, false)};
    p.depth = g.depth;
    for (int v : g.visits)
        p.required_visits.push_back(loc(v));

    ModelDocument doc;
    doc.problem = std::move(p);
    doc.metadata["name"] = g.name;
    std::ostringstream desc;
    desc << g.rows << "x" << g.cols << " grid, " << doc.problem.automaton.locations.size() << " locations, "
         << doc.problem.automaton.edges.size() << " transitions";
    doc.metadata["description"] = desc.str();
    return doc;
}

void check_cell(const GridSpec& g, int k, const std::string& what)
{
    if (g.blocked.count(k))
        throw InvalidSpec(what + " cell " + std::to_string(k) + " is blocked");
}

GridSpec warehouse_spec(const ParamView& pv)
{
    GridSpec g;
    g.rows = pv.integer("rows", 1, 64);
    g.cols = pv.integer("cols", 1, 64);
    const int n = g.rows * g.cols;
    g.start = pv.integer("start", 1, n);
    g.goal = pv.integer("goal", 1, n);
    g.charger = pv.integer("charger", 0, n);
    const std::string variant = pv.str("variant");
    if (variant != "human" && variant != "agent")
        throw InvalidSpec("parameter 'variant' must be human or agent");
    const bool agent = variant == "agent";
    g.name = "warehouse-" + variant;
    g.blocked = pv.given("blocked") ? pv.cells("blocked", n) : (agent ? std::set<int>{20} : std::set<int>{});
    std::set<int> oil = pv.given("oil") ? pv.cells("oil", n) : (agent ? std::set<int>{10, 14, 15, 16} : std::set<int>{});
    for (int k : g.blocked)
        if (k > n)
            throw InvalidSpec("blocked cell " + std::to_string(k) + " outside the grid");
    for (int k : oil)
        if (k > n)
            throw InvalidSpec("oil cell " + std::to_string(k) + " outside the grid");
    check_cell(g, g.start, "start");
    check_cell(g, g.goal, "goal");
    if (g.charger)
        check_cell(g, g.charger, "charger");
    g.charge = pv.positive("charge");
    g.capacity = pv.positive("capacity");
    g.floor = pv.rat("floor");
    if (g.floor.sign() < 0 || g.floor > g.charge || g.charge > g.capacity)
        throw InvalidSpec("need 0 <= floor <= charge <= capacity");
    const Rat r = pv.positive("rate"), oil_r = pv.positive("oil_rate");
    const Rat s = pv.positive("speed"), oil_s = pv.positive("oil_speed");
    for (int k = 1; k <= n; ++k) {
        const bool o = oil.count(k) > 0;
        g.rate[k] = o ? oil_r : r;
        g.speed[k] = o ? oil_s : s;
        g.mark[k] = g.blocked.count(k) ? '#' : o ? '~' : k == g.charger ? '+' : '.';
    }
    g.depth = pv.integer("depth", 0, 1000);
    return g;
}

GridSpec rover_spec(const ParamView& pv)
{
    GridSpec g;
    g.name = "rover";
    g.rows = pv.integer("rows", 1, 64);
    g.cols = pv.integer("cols", 1, 64);
    const int n = g.rows * g.cols;
    g.start = pv.integer("start", 1, n);
    g.goal = pv.integer("goal", 1, n);
    g.blocked = pv.cells("blocked", n);
    const std::set<int> sampling = pv.cells("sampling", n);
    const std::set<int> inclined = pv.cells("inclined", n);
    check_cell(g, g.start, "start");
    check_cell(g, g.goal, "goal");
    for (int k : sampling)
        check_cell(g, k, "sampling");
    g.charge = pv.positive("charge");
    g.capacity = pv.positive("capacity");
    g.floor = pv.rat("floor");
    if (g.floor.sign() < 0 || g.floor > g.charge || g.charge > g.capacity)
        throw InvalidSpec("need 0 <= floor <= charge <= capacity");
    const Rat r = pv.positive("rate"), sr = pv.positive("sampling_rate"), ir = pv.positive("inclined_rate");
    const Rat s = pv.positive("speed");
    for (int k = 1; k <= n; ++k) {
        g.rate[k] = inclined.count(k) ? ir : sampling.count(k) ? sr : r;
        g.speed[k] = s;
        g.mark[k] = g.blocked.count(k) ? '#' : inclined.count(k) ? '^' : sampling.count(k) ? '*' : '.';
    }
    g.depth = pv.integer("depth", 0, 1000);
    g.visits.assign(sampling.begin(), sampling.end());
    return g;
}

std::string grid_layout(const GridSpec& g)
{
    std::ostringstream os;
    os << g.name << " " << g.rows << "x" << g.cols << "\n";
    for (int r = g.rows; r >= 1; --r) {
        for (int c = 1; c <= g.cols; ++c) {
            const int k = (r - 1) * g.cols + c;
            char m = g.mark.at(k);
            if (k == g.start)
                m = 'S';
            else if (k == g.goal)
                m = 'G';
            std::string id = std::to_string(k);
            os << (c > 1 ? " " : "") << std::string(3 - std::min<std::size_t>(3, id.size()), ' ') << id << m;
        }
        os << "\n";
    }
    os << "S start, G goal, # blocked";
    if (g.name.rfind("warehouse", 0) == 0)
        os << ", ~ oil, + charger";
    else
        os << ", * sampling, ^ inclined";
    os << "\nrow 1 is at the bottom; cell k spans x in [col-1, col], y in [row-1, row]\n";
    return os.str();
}

ModelDocument water_level(const ParamView& pv)
{
    const Rat high = pv.rat("high"), low = pv.rat("low"), delay = pv.positive("delay");
    const Rat fill = pv.positive("fill_rate"), drain = pv.positive("drain_rate");
    const Rat over = pv.rat("overflow"), under = pv.rat("underflow"), level = pv.rat("level");
    if (!(low < high))
        throw InvalidSpec("need low < high");
    if (level > high)
        throw InvalidSpec("initial level above the high mark");

    PlanningProblem p;
    Automaton& a = p.automaton;
    a.variables = {"x", "y"};
    auto add_loc = [&](int k, std::vector<LinearConstraint> inv, Rat dy) {
        Location l;
        l.id = loc(k);
        l.invariant = std::move(inv);
        l.flow["x"] = rate(Rat(1));
        l.flow["y"] = rate(std::move(dy));
        a.locations.emplace(l.id, std::move(l));
    };
    add_loc(1, {le("y", high)}, fill);      // pump on
    add_loc(2, {le("x", delay)}, fill);     // switching off
    add_loc(3, {ge("y", low)}, -drain);     // pump off
    add_loc(4, {le("x", delay)}, -drain);   // switching on
    add_loc(5, {}, Rat(0));                 // underflow
    add_loc(6, {}, Rat(0));                 // overflow
    auto add_edge = [&](int id, int s, int t, std::string label, std::vector<LinearConstraint> guard, bool reset_x) {
        Edge e;
        e.id = "e" + std::to_string(id);
        e.source = loc(s);
        e.target = loc(t);
        e.label = std::move(label);
        e.guard = std::move(guard);
        if (reset_x)
            e.reset["x"] = AffineExpr::constant_of(Rat(0));
        a.edges.push_back(std::move(e));
    };
    add_edge(1, 1, 2, "high_mark", {eq("y", high)}, true);
    add_edge(2, 2, 3, "pump_off", {eq("x", delay)}, false);
    add_edge(3, 3, 4, "low_mark", {eq("y", low)}, true);
    add_edge(4, 4, 1, "pump_on", {eq("x", delay)}, false);
    add_edge(5, 2, 6, "overflow", {gt("y", over)}, false);
    add_edge(6, 4, 5, "underflow", {lt("y", under)}, false);
    a.init = StateSet{loc(1), {eq("x", Rat(0)), eq("y", level)}};
    p.goal = StateSet{loc(6), {}};
    p.depth = pv.integer("depth", 0, 1000);

    ModelDocument doc;
    doc.problem = std::move(p);
    doc.metadata["name"] = "water_level";
    doc.metadata["description"] = "water-level monitor; x is the switch delay clock, y the water level; l6 is overflow";
    return doc;
}

// 3x3 grid; cell i prefers velocity (sin(i pi/4), cos(i pi/4)), rounded to
// tenths and widened by `spread` into a rectangular flow.
ModelDocument nav(const ParamView& pv)
{
    const int start = pv.integer("start", 1, 9), goal = pv.integer("goal", 1, 9);
    const Rat spread = pv.rat("spread");
    if (spread.sign() < 0)
        throw InvalidSpec("parameter 'spread' must be non-negative");
    const Rat x0 = pv.rat("x"), y0 = pv.rat("y");
    const int sr = (start - 1) / 3 + 1, sc = (start - 1) % 3 + 1;
    if (x0 < Rat(sc - 1) || x0 > Rat(sc) || y0 < Rat(sr - 1) || y0 > Rat(sr))
        throw InvalidSpec("initial position outside the start cell");

    // (sin, cos) of i*pi/4 in tenths for i = 1..9
    static const int vx[] = {7, 10, 7, 0, -7, -10, -7, 0, 7};
    static const int vy[] = {7, 0, -7, -10, -7, 0, 7, 10, 7};
    const Rat half(1, 2);

    PlanningProblem p;
    Automaton& a = p.automaton;
    a.variables = {"x", "y"};
    for (int k = 1; k <= 9; ++k) {
        const int r = (k - 1) / 3 + 1, c = (k - 1) % 3 + 1;
        Location l;
        l.id = loc(k);
        l.invariant = {ge("x", Rat(c - 1)), le("x", Rat(c)), ge("y", Rat(r - 1)), le("y", Rat(r))};
        const Rat dx(vx[k - 1], 10), dy(vy[k - 1], 10);
        l.flow["x"] = band(dx - spread, dx + spread);
        l.flow["y"] = band(dy - spread, dy + spread);
        a.locations.emplace(l.id, std::move(l));
    }
    struct Dir {
        int dr, dc;
    };
    const Dir dirs[] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
    for (int k = 1; k <= 9; ++k) {
        const int r = (k - 1) / 3 + 1, c = (k - 1) % 3 + 1;
        for (const auto& d : dirs) {
            const int r2 = r + d.dr, c2 = c + d.dc;
            if (r2 < 1 || r2 > 3 || c2 < 1 || c2 > 3)
                continue;
            const int k2 = (r2 - 1) * 3 + c2;
            Edge e;
            e.id = "e" + std::to_string(k) + "_" + std::to_string(k2);
            e.source = loc(k);
            e.target = loc(k2);
            e.label = "cross_" + e.source + "_" + e.target;
            // Crossings strictly inside the shared side; corners are not doors.
            if (d.dc != 0)
                e.guard = {eq("x", Rat(d.dc > 0 ? c : c - 1)), gt("y", Rat(r - 1)), lt("y", Rat(r))};
            else
                e.guard = {eq("y", Rat(d.dr > 0 ? r : r - 1)), gt("x", Rat(c - 1)), lt("x", Rat(c))};
            a.edges.push_back(std::move(e));
        }
    }
    a.init = StateSet{loc(start), {eq("x", x0), eq("y", y0)}};
    const int gr = (goal - 1) / 3 + 1, gc = (goal - 1) % 3 + 1;
    p.goal = StateSet{loc(goal), {eq("x", Rat(gc) - half), eq("y", Rat(gr) - half)}};
    p.depth = pv.integer("depth", 0, 1000);

    ModelDocument doc;
    doc.problem = std::move(p);
    doc.metadata["name"] = "nav";
    doc.metadata["description"] = "3x3 navigation benchmark with a rectangular vector field per cell";
    return doc;
}

// Reactor with two control rods. Locations l1..l9 heat with no rod inside,
// indexed by how often each rod has been used (0..2); l10..l15 cool with rod
// 1 inside, l16..l21 with rod 2 inside; l22 is the unsafe state, entered when
// the core is at the high mark and neither rod has recovered.
ModelDocument nrs(const ParamView& pv)
{
    const Rat low = pv.rat("low"), high = pv.rat("high"), rec = pv.positive("recovery");
    const Rat hmin = pv.positive("heat_min"), hmax = pv.positive("heat_max");
    const Rat cmin = pv.positive("cool_min"), cmax = pv.positive("cool_max");
    if (!(low < high) || hmax < hmin || cmax < cmin)
        throw InvalidSpec("need low < high and min rates not above max rates");

    auto heat = [](int w1, int w2) { return loc(1 + 3 * w1 + w2); };
    auto rod1 = [](int w1, int w2) { return loc(10 + 3 * (w1 - 1) + w2); };
    auto rod2 = [](int w1, int w2) { return loc(16 + 2 * w1 + (w2 - 1)); };
    const std::string unsafe = loc(22);

    PlanningProblem p;
    Automaton& a = p.automaton;
    a.variables = {"x", "y1", "y2"};
    auto add_loc = [&](const std::string& id, FlowInterval fx, bool bounded) {
        Location l;
        l.id = id;
        if (bounded)
            l.invariant = {ge("x", low), le("x", high)};
        l.flow["x"] = std::move(fx);
        l.flow["y1"] = rate(Rat(1));
        l.flow["y2"] = rate(Rat(1));
        a.locations.emplace(id, std::move(l));
    };
    for (int w1 = 0; w1 < 3; ++w1)
        for (int w2 = 0; w2 < 3; ++w2)
            add_loc(heat(w1, w2), band(hmin, hmax), true);
    for (int w1 = 1; w1 < 3; ++w1)
        for (int w2 = 0; w2 < 3; ++w2)
            add_loc(rod1(w1, w2), band(-cmax, -cmin), true);
    for (int w1 = 0; w1 < 3; ++w1)
        for (int w2 = 1; w2 < 3; ++w2)
            add_loc(rod2(w1, w2), band(-cmax, -cmin), true);
    add_loc(unsafe, rate(Rat(0)), false);

    int next = 1;
    auto add_edge = [&](const std::string& s, const std::string& t, std::string label,
                        std::vector<LinearConstraint> guard, const std::string& reset) {
        Edge e;
        e.id = "e" + std::to_string(next++);
        e.source = s;
        e.target = t;
        e.label = std::move(label);
        e.guard = std::move(guard);
        if (!reset.empty())
            e.reset[reset] = AffineExpr::constant_of(Rat(0));
        a.edges.push_back(std::move(e));
    };
    for (int w1 = 0; w1 < 3; ++w1) {
        for (int w2 = 0; w2 < 3; ++w2) {
            if (w1 < 2)
                add_edge(heat(w1, w2), rod1(w1 + 1, w2), "insert_rod1", {eq("x", high), ge("y1", rec)}, "");
            if (w2 < 2)
                add_edge(heat(w1, w2), rod2(w1, w2 + 1), "insert_rod2", {eq("x", high), ge("y2", rec)}, "");
            add_edge(heat(w1, w2), unsafe, "meltdown", {eq("x", high), lt("y1", rec), lt("y2", rec)}, "");
        }
    }
    for (int w1 = 1; w1 < 3; ++w1)
        for (int w2 = 0; w2 < 3; ++w2)
            add_edge(rod1(w1, w2), heat(w1, w2), "remove_rod1", {eq("x", low)}, "y1");
    for (int w1 = 0; w1 < 3; ++w1)
        for (int w2 = 1; w2 < 3; ++w2)
            add_edge(rod2(w1, w2), heat(w1, w2), "remove_rod2", {eq("x", low)}, "y2");

    a.init = StateSet{heat(0, 0), {eq("x", low), eq("y1", rec), eq("y2", rec)}};
    p.goal = StateSet{unsafe, {}};
    p.depth = pv.integer("depth", 0, 1000);

    ModelDocument doc;
    doc.problem = std::move(p);
    doc.metadata["name"] = "nrs";
    doc.metadata["description"] = "two-rod reactor controller; l22 is the unsafe state";
    return doc;
}

// Junctures A..J are l1..l10. Each route has a driving delay; the battery
// drains one unit per time unit while driving.
ModelDocument city(const ParamView& pv)
{
    const Rat charge = pv.positive("charge");
    const std::string goal = pv.str("goal");
    if (goal.size() != 1 || goal[0] < 'A' || goal[0] > 'J')
        throw InvalidSpec("parameter 'goal' must be a juncture A..J");
    if (goal == "A")
        throw InvalidSpec("goal juncture equals the start juncture");
    auto at = [](char j) { return loc(j - 'A' + 1); };

    struct Route {
        char from, to;
        int delay;
        bool both;
    };
    static const Route routes[] = {
        {'A', 'B', 4, true}, {'A', 'C', 5, true}, {'B', 'C', 2, true}, {'B', 'D', 6, true},
        {'C', 'D', 4, true}, {'D', 'E', 7, true}, {'D', 'F', 8, true}, {'E', 'F', 2, true},
        {'G', 'H', 3, true}, {'G', 'I', 2, true}, {'E', 'G', 6, false}, {'F', 'G', 5, false},
        {'I', 'J', 2, false}, {'J', 'H', 2, false}, {'H', 'J', 3, false},
    };

    PlanningProblem p;
    Automaton& a = p.automaton;
    a.variables = {"b", "d"};
    for (char j = 'A'; j <= 'J'; ++j) {
        Location l;
        l.id = at(j);
        l.invariant = {ge("b", Rat(0))};
        l.flow["b"] = rate(Rat(-1));
        l.flow["d"] = rate(Rat(1));
        a.locations.emplace(l.id, std::move(l));
    }
    auto add = [&](char s, char t, int delay) {
        Edge e;
        e.id = std::string("e") + s + t;
        e.source = at(s);
        e.target = at(t);
        e.label = std::string("drive_") + s + t;
        e.guard = {ge("d", Rat(delay))};
        e.reset["d"] = AffineExpr::constant_of(Rat(0));
        a.edges.push_back(std::move(e));
    };
    for (const auto& r : routes) {
        add(r.from, r.to, r.delay);
        if (r.both)
            add(r.to, r.from, r.delay);
    }
    a.init = StateSet{at('A'), {eq("b", charge), eq("d", Rat(0))}};
    p.goal = StateSet{at(goal[0]), {}};
    p.depth = pv.integer("depth", 0, 1000);

    ModelDocument doc;
    doc.problem = std::move(p);
    doc.metadata["name"] = "city";
    doc.metadata["description"] = "city road network; junctures A..J are l1..l10, b is battery, d the route delay clock";
    return doc;
}

std::string graph_layout(const ModelDocument& doc)
{
    const Automaton& a = doc.problem.automaton;
    std::ostringstream os;
    os << doc.metadata.at("name") << ": " << a.locations.size() << " locations, " << a.edges.size()
       << " transitions\n";
    os << "init " << a.init.location << ", goal " << doc.problem.goal.location << "\n";
    for (const auto& e : a.edges)
        os << "  " << e.id << ": " << e.source << " -> " << e.target << " (" << e.label << ")\n";
    return os.str();
}

} // namespace

const std::vector<std::string>& benchmark_families()
{
    static const std::vector<std::string> f = {"warehouse", "rover", "water_level", "nav", "nrs", "city"};
    return f;
}

std::map<std::string, std::string> benchmark_defaults(const std::string& family)
{
    auto it = defaults_table().find(family);
    if (it == defaults_table().end())
        throw InvalidSpec("unknown benchmark family '" + family + "'");
    return it->second;
}

ModelDocument generate_benchmark(const BenchmarkSpec& spec)
{
    ParamView pv(spec);
    ModelDocument doc;
    if (spec.family == "warehouse")
        doc = build_grid(warehouse_spec(pv));
    else if (spec.family == "rover")
        doc = build_grid(rover_spec(pv));
    else if (spec.family == "water_level")
        doc = water_level(pv);
    else if (spec.family == "nav")
        doc = nav(pv);
    else if (spec.family == "nrs")
        doc = nrs(pv);
    else
        doc = city(pv);
    auto report = validate_problem(doc.problem);
    if (!report.ok())
        throw InvalidSpec("generated model is invalid: " + report.issues.front());
    return doc;
}

std::string benchmark_layout(const BenchmarkSpec& spec)
{
    ParamView pv(spec);
    if (spec.family == "warehouse")
        return grid_layout(warehouse_spec(pv));
    if (spec.family == "rover")
        return grid_layout(rover_spec(pv));
    return graph_layout(generate_benchmark(spec));
}

} // namespace hxplain
