// orbitkit: command-line front end.
//
//   orbitkit roots    --family A --rank 3
//   orbitkit classify --family D --rank 8 --dim 6 --verify
//   orbitkit count    --family B --rank 9 --e 3 --var q
//   orbitkit oracle census  --family A --rank 3 -p 5
//   orbitkit oracle section --family A --rank 3 -p 5 --dim 2 [--strings FILE]
//   orbitkit oracle family  --family D --rank 4 -p 7 --support 8,9,10 --expect 6
//   orbitkit verify-all [--long]
//
// Every command accepts --format text|json. The exit code is 0 only when all
// verdicts of the command pass.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <orbitkit/orbitkit.hpp>
#include <orbitkit/verify.hpp>

using nlohmann::json;
using namespace orbitkit;

namespace {

struct Common {
    std::string family = "A";
    int rank = 2;
    std::string format = "text";
    RootSystemSpec spec() const {
        if (family.size() != 1) throw std::invalid_argument("family must be one of A, B, C, D");
        return {family_from_char(static_cast<char>(std::toupper(family[0]))), rank};
    }
};

void add_spec(CLI::App* cmd, Common& c) {
    cmd->add_option("--family,-f", c.family, "A, B, C or D")->required();
    cmd->add_option("--rank,-r", c.rank, "rank")->required();
    cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

// Collects verdicts and artifacts; prints and yields the exit code.
class Report {
public:
    Report(std::string command, const std::string& format) : format_(format), start_(clock::now()) {
        doc_["command"] = std::move(command);
        doc_["verdicts"] = json::object();
    }
    json& inputs() { return doc_["inputs"]; }
    json& artifacts() { return doc_["artifacts"]; }
    void verdict(const std::string& name, bool ok) {
        doc_["verdicts"][name] = ok;
        ok_ = ok_ && ok;
    }
    void text(const std::string& line) { text_ << line << '\n'; }
    int finish() {
        doc_["seconds"] = std::chrono::duration<double>(clock::now() - start_).count();
        if (format_ == "json") {
            std::cout << doc_.dump(2) << '\n';
        } else {
            std::cout << text_.str();
            for (const auto& [name, ok] : doc_["verdicts"].items())
                std::cout << (ok.get<bool>() ? "PASS " : "FAIL ") << name << '\n';
        }
        return ok_ ? 0 : 1;
    }

private:
    using clock = std::chrono::steady_clock;
    std::string format_;
    clock::time_point start_;
    json doc_;
    std::ostringstream text_;
    bool ok_ = true;
};

json poly_json(const VPoly& p) { return p.coeffs(); }

int cmd_roots(const Common& c) {
    RootSystem rs(c.spec());
    Report rep("roots", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}};
    rep.artifacts()["order"] = rs.order() == RootSystem::Order::Table ? "table" : "generated";
    json roots = json::array();
    rep.text(rs.spec().name() + ": " + std::to_string(rs.size()) + " positive roots (" +
             (rs.order() == RootSystem::Order::Table ? "table order" : "generated order") + ")");
    for (int k = 0; k < rs.size(); ++k) {
        roots.push_back({{"index", k + 1}, {"root", rs.root(k)}, {"simple", rs.coords(k)}, {"height", rs.height(k)},
                         {"sing", rs.sing_size(k)}});
        rep.text(std::to_string(k + 1) + "\t" + rs.root_name(k) + "\theight " + std::to_string(rs.height(k)) +
                 "\t|Sing| " + std::to_string(rs.sing_size(k)));
    }
    json constants = json::array();
    for (int i = 0; i < rs.size(); ++i)
        for (int j = i + 1; j < rs.size(); ++j)
            if (rs.sum(i, j) >= 0) constants.push_back({i + 1, j + 1, rs.sum(i, j) + 1, rs.n(i, j)});
    rep.artifacts()["roots"] = roots;
    rep.artifacts()["structure_constants"] = constants;  // [i, j, i+j, n_ij]
    rep.text(std::to_string(constants.size()) + " nonzero brackets among distinct pairs");
    return rep.finish();
}

int cmd_classify(const Common& c, int dim, bool verify) {
    RootSystem rs(c.spec());
    Report rep("classify", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}, {"dim", dim}, {"verify", verify}};
    const auto& cls = classification(rs.spec(), dim);
    json strings = json::array(), cases = json::array();
    std::vector<std::string> letters;
    for (const auto& s : cls.strings) {
        strings.push_back(s.letters);
        letters.push_back(s.letters);
        rep.text(s.letters);
    }
    for (const auto& k : cls.cases)
        if (k.resolution != "3.1")
            cases.push_back({{"start", k.start}, {"resolution", k.resolution}, {"bound", k.bound}, {"entry", k.registry}});
    rep.artifacts()["strings"] = strings;
    rep.artifacts()["non_abelian_cases"] = cases;
    rep.artifacts()["weight"] = weight_text(s_weight(letters));
    rep.text(std::to_string(letters.size()) + " strings, weight " + weight_text(s_weight(letters)) + ", " +
             std::to_string(cases.size()) + " non-abelian cases");
    if (verify) {
        const auto v = verify_against_tables(rs, dim);
        if (!v.table_present) {
            rep.text("no bundled table for " + rs.spec().name() + " dimension " + std::to_string(dim));
            rep.verdict("table present", false);
        } else {
            rep.artifacts()["printed_weight"] = weight_text(v.weight_printed);
            rep.artifacts()["errata"] = v.errata_applied;
            rep.artifacts()["exact_raw"] = v.exact_raw;
            rep.artifacts()["exact"] = v.exact;
            rep.text("printed weight " + weight_text(v.weight_printed) +
                     (v.errata_applied.empty() ? "" : ", with errata " + weight_text(v.weight_amended)));
            rep.text(std::string("exact string sets: ") + (v.exact_with_errata ? "yes" : "no") + " (raw letters " +
                     (v.exact_raw ? "yes" : "no") + ")");
            rep.verdict("weight polynomial (verbatim)", v.weight_equal);
            if (!v.errata_applied.empty()) rep.verdict("weight polynomial (with errata)", v.weight_equal_with_errata);
            rep.verdict("rank of each printed string (" + std::to_string(v.rank_checked) + ")", v.rank_failures.empty());
        }
    }
    return rep.finish();
}

int cmd_count(const Common& c, int e, const std::string& var, const std::string& source) {
    Report rep("count", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}, {"e", e}, {"var", var}, {"source", source}};
    const auto p = count_characters(c.spec(), e, source == "tables" ? WeightSource::Tables : WeightSource::Engine);
    rep.artifacts()["v"] = poly_json(p);
    rep.artifacts()["q"] = poly_json(p.to_q());
    rep.artifacts()["placements"] = placements(c.spec(), e).size();
    rep.text(var == "q" ? p.to_q().str('q') : p.str('v'));
    rep.verdict("nonnegative coefficients in v", isaacs_check(p));
    return rep.finish();
}

std::vector<int> parse_indices(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item) - 1);
    return out;
}

int cmd_census(const Common& c, std::uint32_t p, const std::string& method, const std::string& gens, unsigned jobs) {
    RootSystem rs(c.spec());
    Report rep("oracle census", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}, {"p", p}, {"method", method}};
    OrbitCensus census = method == "rank"
                             ? rank_census(rs, p, jobs).orbits()
                             : enumerate_orbits(rs, p, gens == "simple" ? Generators::SimpleRoots : Generators::AllRoots);
    json dims = json::object();
    bool matches = true;
    for (auto [d, n] : census.by_dimension) {
        dims[std::to_string(d)] = n;
        std::string line = "dim " + std::to_string(d) + ": " + std::to_string(n) + " orbits";
        if (d <= 6) {
            const auto expected = count_characters(rs.spec(), d / 2).eval(p - 1);
            matches = matches && static_cast<std::uint64_t>(expected) == n;
            line += " (counting gives " + std::to_string(expected) + ")";
        }
        rep.text(line);
    }
    for (int e = 0; e <= 3; ++e)
        if (!census.by_dimension.count(2 * e)) matches = matches && count_characters(rs.spec(), e).eval(p - 1) == 0;
    rep.artifacts()["by_dimension"] = dims;
    rep.artifacts()["total_forms"] = census.total_forms;
    rep.artifacts()["total_orbits"] = census.total_orbits;
    rep.verdict("partition identity", census.partition_identity());
    rep.verdict("agrees with counting at q = p", matches);
    return rep.finish();
}

int cmd_section(const Common& c, std::uint32_t p, int dim, const std::string& file) {
    RootSystem rs(c.spec());
    Report rep("oracle section", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}, {"p", p}, {"dim", dim}, {"strings", file}};
    std::vector<ClassString> strings;
    if (file.empty()) {
        strings = classification(rs.spec(), dim).strings;
    } else {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open " + file);
        std::string s;
        while (in >> s) strings.push_back({data::normalize_string(s, rs.size(), 'A'), {}});
    }
    const auto r = section_check(rs, p, strings, dim);
    rep.artifacts()["section_points"] = r.section_points;
    rep.artifacts()["extensive_orbits"] = r.orbits_of_dim;
    rep.artifacts()["orbits_hit"] = r.orbits_hit;
    rep.text(std::to_string(strings.size()) + " strings, " + std::to_string(r.section_points) + " points, " +
             std::to_string(r.orbits_hit) + "/" + std::to_string(r.orbits_of_dim) + " extensive orbits of dimension " +
             std::to_string(dim) + " met");
    rep.verdict("set-section", r.passed());
    return rep.finish();
}

int cmd_family(const Common& c, std::uint32_t p, const std::string& support, const std::string& free, int expect) {
    RootSystem rs(c.spec());
    Report rep("oracle family", c.format);
    rep.inputs() = {{"family", c.family}, {"rank", c.rank}, {"p", p}, {"support", support}, {"expect", expect}};
    const auto r = family_dim_check(rs, from_indices(parse_indices(support)), p, expect, from_indices(parse_indices(free)));
    json ranks = json::object();
    for (auto [k, n] : r.by_rank) ranks[std::to_string(k)] = n;
    rep.artifacts()["forms"] = r.forms;
    rep.artifacts()["by_rank"] = ranks;
    rep.text(std::to_string(r.forms) + " forms checked");
    rep.verdict("every form has rank " + std::to_string(expect), r.passed());
    return rep.finish();
}

int cmd_verify_all(const verify::Options& opt, const std::string& format) {
    Report rep("verify-all", format);
    rep.inputs() = {{"long", opt.long_mode}, {"jobs", opt.jobs}};
    json list = json::array();
    for (const auto& run : verify::all_criteria()) {
        const auto v = run(opt);
        rep.text(verify::line(v));
        list.push_back({{"id", v.id}, {"title", v.title}, {"passed", v.passed}, {"detail", v.detail}, {"seconds", v.seconds}});
        rep.verdict("criterion " + std::to_string(v.id), v.passed);
    }
    rep.artifacts()["criteria"] = list;
    return rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coadjoint orbits of small dimension for classical nilradicals"};
    app.require_subcommand(1);

    Common common;
    auto* roots = app.add_subcommand("roots", "positive roots, indices, |Sing| and structure constants");
    add_spec(roots, common);

    int dim = 2;
    bool verify_flag = false;
    auto* classify = app.add_subcommand("classify", "extensive orbits of a given dimension");
    add_spec(classify, common);
    classify->add_option("--dim,-d", dim, "orbit dimension (2, 4 or 6)")->required()->check(CLI::IsMember({2, 4, 6}));
    classify->add_flag("--verify", verify_flag, "compare with the bundled tables");

    int e = 1;
    std::string var = "v", source = "engine";
    auto* count = app.add_subcommand("count", "number of orbits of dimension 2e as a polynomial");
    add_spec(count, common);
    count->add_option("--e", e, "half the orbit dimension (0..3)")->required()->check(CLI::Range(0, 3));
    count->add_option("--var", var, "v or q")->check(CLI::IsMember({"v", "q"}));
    count->add_option("--source", source, "weights from the engine or the tables")
        ->check(CLI::IsMember({"engine", "tables"}));

    auto* oracle = app.add_subcommand("oracle", "brute force over a prime field");
    oracle->require_subcommand(1);
    std::uint32_t p = 5;
    unsigned jobs = 1;
    std::string method = "enumerate", gens = "all", strings_file, support, free_roots;
    int expect = 0;
    auto* census = oracle->add_subcommand("census", "orbit counts by dimension");
    add_spec(census, common);
    census->add_option("-p", p, "prime")->required();
    census->add_option("--method", method, "enumerate or rank")->check(CLI::IsMember({"enumerate", "rank"}));
    census->add_option("--generators", gens, "all or simple")->check(CLI::IsMember({"all", "simple"}));
    census->add_option("--jobs", jobs, "worker threads for the rank method");
    auto* section = oracle->add_subcommand("section", "set-section uniqueness");
    add_spec(section, common);
    section->add_option("-p", p, "prime")->required();
    section->add_option("--dim,-d", dim, "orbit dimension")->required();
    section->add_option("--strings", strings_file, "file of strings (default: regenerated)");
    auto* family = oracle->add_subcommand("family", "rank of every form with a given support");
    add_spec(family, common);
    family->add_option("-p", p, "prime")->required();
    family->add_option("--support", support, "1-based root indices, comma separated")->required();
    family->add_option("--free", free_roots, "indices allowed to take any value");
    family->add_option("--expect", expect, "expected orbit dimension")->required();

    verify::Options vopt;
    std::string vformat = "text";
    auto* all = app.add_subcommand("verify-all", "run every acceptance check");
    all->add_flag("--long", vopt.long_mode, "include the heavy oracle runs");
    all->add_option("--jobs", vopt.jobs, "worker threads");
    all->add_option("--format", vformat, "text or json")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);
    try {
        if (*roots) return cmd_roots(common);
        if (*classify) return cmd_classify(common, dim, verify_flag);
        if (*count) return cmd_count(common, e, var, source);
        if (*census) return cmd_census(common, p, method, gens, jobs);
        if (*section) return cmd_section(common, p, dim, strings_file);
        if (*family) return cmd_family(common, p, support, free_roots, expect);
        if (*all) return cmd_verify_all(vopt, vformat);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 1;
}
