// kzero: exact relative class computations for ring surjections.
//
// Subcommands: class, heller, verify, chow, cycmap, transfer, locus.
// Exit codes: 0 all checks pass, 1 check failures, 2 parse/validation error,
// 3 resource guard, 4 internal error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kzero/cycles.hpp"
#include "kzero/json_io.hpp"
#include "kzero/relgen.hpp"
#include "kzero/suites.hpp"

using namespace kzero;
using nlohmann::json;
using relk0::CheckOutcome;
using relk0::RelContext;
using rings::Ring;
using rings::Surjection;

namespace {

struct ReportBuilder {
    std::string command;
    std::vector<json> checks;
    std::vector<double> times_ms;
    int failed = 0;

    void add(const CheckOutcome& o, double ms) {
        json c{{"id", o.id}, {"anchor", o.anchor}, {"digest", io::digest(o.instance)}, {"pass", o.pass}};
        if (!o.pass) {
            c["detail"] = o.detail;
            c["witness"] = o.instance;
        }
        checks.push_back(std::move(c));
        times_ms.push_back(ms);
        if (!o.pass) ++failed;
    }

    void add_info(const std::string& id, const std::string& anchor, bool pass, const json& payload) {
        json c{{"id", id}, {"anchor", anchor}, {"digest", io::digest(payload)}, {"pass", pass}};
        c["data"] = payload;
        checks.push_back(std::move(c));
        times_ms.push_back(0.0);
        if (!pass) ++failed;
    }

    json finish() const {
        // deterministic body: checks sorted by id, timing kept in the header
        std::vector<size_t> order(checks.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return checks[a].at("id").get<std::string>() < checks[b].at("id").get<std::string>(); });
        json sorted = json::array();
        json times = json::object();
        for (size_t i : order) {
            sorted.push_back(checks[i]);
            times[checks[i].at("id").get<std::string>()] = times_ms[i];
        }
        auto now = std::chrono::system_clock::now();
        json report{{"schema", io::kSchemaVersion},
                    {"command", command},
                    {"checks", sorted},
                    {"summary", {{"total", checks.size()}, {"failed", failed}}}};
        report["header"] = json{{"tool", "kzero"},
                                {"timestamp", std::chrono::duration_cast<std::chrono::milliseconds>(
                                                  now.time_since_epoch())
                                                  .count()},
                                {"wall_ms", times}};
        return report;
    }
};

void emit(const ReportBuilder& rb, const std::string& out_path, bool quiet) {
    json rep = rb.finish();
    if (!quiet) {
        for (const auto& c : rep.at("checks"))
            std::cout << (c.at("pass").get<bool>() ? "pass  " : "FAIL  ") << c.at("id").get<std::string>() << "\n";
        std::cout << rb.checks.size() - rb.failed << "/" << rb.checks.size() << " checks passed\n";
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw UsageError("cannot write report to " + out_path);
        f << rep.dump(2) << "\n";
    }
}

std::vector<RelContext> default_contexts() {
    return {
        RelContext::make(Surjection::make(Ring::integers(), Ring::integers_mod(5))),
        RelContext::make(Surjection::make(Ring::integers(), Ring::integers_mod(8))),
        RelContext::make(Surjection::make(Ring::integers_mod(9), Ring::integers_mod(3))),
        RelContext::make(Surjection::make(Ring::poly_quot(2, {0, 0, 0, 1}, "x"), Ring::prime_field(2))),
        RelContext::make(Surjection::make(Ring::poly_ring(2), Ring::poly_quot(2, {0, 0, 1}))),
        RelContext::make(Surjection::make(Ring::poly_ring(3), Ring::poly_quot(3, {1, 0, 1}))),
        RelContext::make(Surjection::make(Ring::poly_ring(5), Ring::poly_quot(5, {0, 0, 1}))),
    };
}

std::vector<Ring> default_rings() {
    return {Ring::prime_field(2),          Ring::prime_field(3),
            Ring::prime_field(5),          Ring::integers_mod(4),
            Ring::integers_mod(8),         Ring::integers_mod(9),
            Ring::poly_quot(2, {0, 0, 1}), Ring::poly_quot(3, {1, 0, 1})};
}

// "t^2+t+1", "x^3", "2*t+1", coefficients reduced mod p
poly::Coeffs parse_poly(const std::string& text, const std::string& var, std::int64_t p) {
    poly::Coeffs out;
    auto bump = [&](int deg, std::int64_t coef) {
        if (static_cast<int>(out.size()) <= deg) out.resize(deg + 1, 0);
        out[deg] += coef;
    };
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        std::int64_t sign = 1;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw UsageError("polynomial parse error at '" + text.substr(i) + "'");
        }
        first = false;
        skip_ws();
        std::int64_t coef = 1;
        bool saw_coef = false;
        if (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
            coef = 0;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) coef = coef * 10 + (text[i++] - '0');
            saw_coef = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        int deg = 0;
        if (i + var.size() <= text.size() && text.compare(i, var.size(), var) == 0) {
            i += var.size();
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
                    throw UsageError("polynomial parse error: exponent expected");
                deg = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) deg = deg * 10 + (text[i++] - '0');
            }
        } else if (!saw_coef) {
            throw UsageError("polynomial parse error at '" + text.substr(i) + "'");
        }
        bump(deg, sign * coef);
        skip_ws();
    }
    return poly::canon(std::move(out), p);
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io::ParseError(path, "cannot open file");
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw io::ParseError(path, e.what());
    }
    return j;
}

struct InstanceFile {
    RelContext ctx;
    std::map<std::string, relk0::RelTriple> triples;
    std::map<std::string, relk0::DegreewiseTriple> degreewise;
};

InstanceFile load_instance_file(const std::string& path) {
    json j = load_json_file(path);
    if (!j.contains("schema") || j.at("schema").get<int>() != io::kSchemaVersion)
        throw io::ParseError(path, "missing or unsupported schema version");
    if (!j.contains("surjection")) throw io::ParseError(path, "missing surjection");
    RelContext ctx = RelContext::make(io::surjection_from_json(j.at("surjection"), path + ":surjection"));
    InstanceFile out{ctx, {}, {}};
    if (j.contains("triples"))
        for (const auto& [name, tj] : j.at("triples").items())
            out.triples.emplace(name, io::rel_triple_from_json(ctx, tj, path + ":triples." + name));
    if (j.contains("degreewise"))
        for (const auto& [name, tj] : j.at("degreewise").items())
            out.degreewise.emplace(name, io::degreewise_from_json(ctx, tj, path + ":degreewise." + name));
    return out;
}

double run_ms(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_verify(const std::string& suite, std::uint64_t seed, int count, const std::string& surjection_json,
               const std::string& ring_json, const std::string& replay_path, const std::string& out_path) {
    ReportBuilder rb;
    rb.command = "verify";

    if (!replay_path.empty()) {
        json w = load_json_file(replay_path);
        std::string kind_s = w.at("kind").get<std::string>();
        std::uint64_t wseed = w.at("seed").get<std::uint64_t>();
        int windex = w.at("index").get<int>();
        CheckOutcome o;
        if (auto rk = relk0::kind_from_name(kind_s)) {
            RelContext ctx = RelContext::make(io::surjection_from_json(w.at("surjection"), replay_path));
            o = relk0::verify_relation(ctx, *rk, wseed, windex);
        } else if (auto rs = relk0::ring_suite_from_name(kind_s)) {
            Ring r = io::ring_from_json(w.at("ring"), replay_path);
            o = relk0::verify_ring_property(r, *rs, wseed, windex);
        } else {
            throw io::ParseError(replay_path, "unknown suite '" + kind_s + "'");
        }
        if (w.contains("witness") && w.at("witness") != o.instance)
            throw io::ParseError(replay_path, "stored witness does not match the regenerated instance");
        rb.add(o, 0.0);
        emit(rb, out_path, false);
        return rb.failed == 0 ? 0 : 1;
    }

    std::vector<RelContext> ctxs;
    if (!surjection_json.empty())
        ctxs.push_back(RelContext::make(io::surjection_from_json(json::parse(surjection_json), "--surjection")));
    else
        ctxs = default_contexts();
    std::vector<Ring> rlist;
    if (!ring_json.empty())
        rlist.push_back(io::ring_from_json(json::parse(ring_json), "--ring"));
    else
        rlist = default_rings();

    std::vector<relk0::RelationKind> rel_kinds;
    std::vector<relk0::RingSuiteKind> ring_kinds;
    if (suite == "all") {
        rel_kinds = relk0::all_relation_kinds();
        ring_kinds = relk0::all_ring_suites();
    } else if (auto rk = relk0::kind_from_name(suite)) {
        rel_kinds = {*rk};
    } else if (auto rs = relk0::ring_suite_from_name(suite)) {
        ring_kinds = {*rs};
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }

    for (const auto& kind : rel_kinds)
        for (const auto& ctx : ctxs)
            for (int i = 0; i < count; ++i) {
                CheckOutcome o;
                double ms = run_ms([&] { o = relk0::verify_relation(ctx, kind, seed, i); });
                // the replayable coordinates travel with the witness
                if (!o.pass)
                    o.instance = json{{"kind", relk0::kind_name(kind)}, {"surjection", io::to_json(ctx.f())},
                                      {"seed", seed},                   {"index", i},
                                      {"witness", o.instance}};
                rb.add(o, ms);
            }
    for (const auto& kind : ring_kinds)
        for (const auto& r : rlist)
            for (int i = 0; i < count; ++i) {
                CheckOutcome o;
                double ms = run_ms([&] { o = relk0::verify_ring_property(r, kind, seed, i); });
                if (!o.pass)
                    o.instance = json{{"kind", relk0::ring_suite_name(kind)}, {"ring", io::to_json(r)},
                                      {"seed", seed},                         {"index", i},
                                      {"witness", o.instance}};
                rb.add(o, ms);
            }
    emit(rb, out_path, false);
    return rb.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact relative class computations for ring surjections"};
    app.require_subcommand(1);

    std::string out_path, input_path, triple_name, suite = "all", surjection_json, ring_json, replay_path;
    std::string modulus_str = "t^2", var = "t", min_poly_json;
    std::uint64_t seed = 1;
    int count = 20, bound = 3;
    std::int64_t field = 2, cap = 1 << 20;
    if (const char* env_cap = std::getenv("KZERO_CAP")) cap = std::atoll(env_cap);

    auto* c_class = app.add_subcommand("class", "class of a named triple from an instance file");
    c_class->add_option("--input", input_path, "instance file (json)")->required();
    c_class->add_option("--triple", triple_name, "triple name")->required();
    c_class->add_option("--seed", seed, "tie-breaking seed");
    c_class->add_option("--out", out_path, "report path");

    auto* c_heller = app.add_subcommand("heller", "exactness report for a surjection");
    c_heller->add_option("--surjection", surjection_json, "surjection as json")->required();
    c_heller->add_option("--seed", seed, "sampling seed");
    c_heller->add_option("--cap", cap, "enumeration cap");
    c_heller->add_option("--out", out_path, "report path");

    auto* c_verify = app.add_subcommand("verify", "seeded verification suites");
    c_verify->add_option("--suite", suite, "suite name or 'all'");
    c_verify->add_option("--seed", seed, "seed");
    c_verify->add_option("--count", count, "instances per suite and surjection");
    c_verify->add_option("--surjection", surjection_json, "restrict to one surjection (json)");
    c_verify->add_option("--ring", ring_json, "restrict ring suites to one ring (json)");
    c_verify->add_option("--replay", replay_path, "replay a failure witness file");
    c_verify->add_option("--out", out_path, "report path");

    auto* c_chow = app.add_subcommand("chow", "cycle group presentation for the affine line");
    c_chow->add_option("--field", field, "prime field size")->required();
    c_chow->add_option("--modulus", modulus_str, "modulus polynomial, e.g. t^2")->required();
    c_chow->add_option("--bound", bound, "generator degree bound")->required();
    c_chow->add_option("--var", var, "variable name");
    c_chow->add_option("--cap", cap, "enumeration cap");
    c_chow->add_option("--out", out_path, "report path");

    auto* c_cycmap = app.add_subcommand("cycmap", "cycle class map checks");
    c_cycmap->add_option("--field", field, "prime field size")->required();
    c_cycmap->add_option("--modulus", modulus_str, "modulus polynomial")->required();
    c_cycmap->add_option("--bound", bound, "degree bound")->required();
    c_cycmap->add_option("--var", var, "variable name");
    c_cycmap->add_option("--cap", cap, "enumeration cap");
    c_cycmap->add_option("--out", out_path, "report path");

    auto* c_transfer = app.add_subcommand("transfer", "norm compatibility of restriction of scalars");
    c_transfer->add_option("--field", field, "prime field size")->required();
    c_transfer->add_option("--modulus", modulus_str, "modulus polynomial")->required();
    c_transfer->add_option("--var", var, "variable name");
    c_transfer->add_option("--min-poly", min_poly_json, "algebra min poly as json coefficient lists");
    c_transfer->add_option("--seed", seed, "seed");
    c_transfer->add_option("--count", count, "instances");
    c_transfer->add_option("--out", out_path, "report path");

    auto* c_locus = app.add_subcommand("locus", "trivializing locus of triples");
    c_locus->add_option("--input", input_path, "instance file (json)");
    c_locus->add_option("--triple", triple_name, "triple name (default: all)");
    c_locus->add_option("--field", field, "prime field size");
    c_locus->add_option("--modulus", modulus_str, "modulus polynomial");
    c_locus->add_option("--var", var, "variable name");
    c_locus->add_option("--seed", seed, "seed for random triples without --input");
    c_locus->add_option("--count", count, "random triples without --input");
    c_locus->add_option("--out", out_path, "report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_class->parsed()) {
            InstanceFile inst = load_instance_file(input_path);
            ReportBuilder rb;
            rb.command = "class";
            json payload;
            bool found = false;
            if (auto it = inst.triples.find(triple_name); it != inst.triples.end()) {
                relk0::K0Class c = relk0::class_of(inst.ctx, it->second, seed);
                payload = json{{"class", io::to_json(c)}, {"iota", relk0::iota_rank(it->second)}};
                found = true;
            } else if (auto it2 = inst.degreewise.find(triple_name); it2 != inst.degreewise.end()) {
                relk0::K0Class c = relk0::class_of(inst.ctx, it2->second);
                payload = json{{"class", io::to_json(c)}, {"iota", relk0::iota_rank(it2->second)}};
                found = true;
            }
            if (!found) throw io::ParseError(input_path, "no triple named '" + triple_name + "'");
            rb.add_info("class/" + triple_name, "class.compute", true, payload);
            emit(rb, out_path, false);
            return 0;
        }
        if (c_heller->parsed()) {
            RelContext ctx = RelContext::make(io::surjection_from_json(json::parse(surjection_json), "--surjection"), cap);
            relk0::HellerReport rep = relk0::heller_sequence_check(ctx, seed);
            ReportBuilder rb;
            rb.command = "heller";
            rb.add_info("heller/" + ctx.f().describe(), "heller.sequence_exact", rep.pass(), io::to_json(rep));
            emit(rb, out_path, false);
            return rep.pass() ? 0 : 1;
        }
        if (c_verify->parsed()) return run_verify(suite, seed, count, surjection_json, ring_json, replay_path, out_path);
        if (c_chow->parsed()) {
            cycles::ModulusPair pair(field, parse_poly(modulus_str, var, field), var);
            cycles::ChowPresentation pres = cycles::chow_presentation(pair, bound, cap);
            ReportBuilder rb;
            rb.command = "chow";
            json gens = json::array();
            for (const auto& g : pres.generators()) gens.push_back(g);
            json payload{{"generators", gens},
                         {"relations", pres.relations().size()},
                         {"torsion", pres.torsion()},
                         {"free_rank", pres.free_rank()}};
            if (pres.order()) payload["order"] = *pres.order();
            rb.add_info("chow/" + pair.fiber().describe() + "/bound" + std::to_string(bound), "cycles.presentation",
                        true, payload);
            emit(rb, out_path, false);
            return 0;
        }
        if (c_cycmap->parsed()) {
            cycles::ModulusPair pair(field, parse_poly(modulus_str, var, field), var);
            cycles::CycleMapReport rep = cycles::cycle_map_check(pair, bound, cap);
            ReportBuilder rb;
            rb.command = "cycmap";
            json payload{{"generators", rep.generators},
                         {"relations_checked", rep.relations_checked},
                         {"relations_respected", rep.relations_respected},
                         {"well_defined", rep.well_defined},
                         {"surjective", rep.surjective},
                         {"unit_group_order", rep.unit_group_order},
                         {"isomorphism", rep.isomorphism},
                         {"probe_found", rep.probe_found}};
            if (rep.chow_order) payload["chow_order"] = *rep.chow_order;
            if (rep.probe_found) {
                payload["probe_g"] = rep.probe_g;
                payload["probe_h"] = rep.probe_h;
            }
            rb.add_info("cycmap/" + pair.fiber().describe() + "/bound" + std::to_string(bound),
                        "cycles.map_well_defined_surjective", rep.pass(), payload);
            emit(rb, out_path, false);
            return rep.pass() ? 0 : 1;
        }
        if (c_transfer->parsed()) {
            cycles::ModulusPair pair(field, parse_poly(modulus_str, var, field), var);
            RelContext ctx = RelContext::make(pair.surjection());
            Ring line = pair.line();
            std::vector<rings::RingElem> mp;
            if (min_poly_json.empty()) {
                mp = {line.one(), line.one(), line.one()}; // y^2 + y + 1
            } else {
                for (const auto& c : json::parse(min_poly_json)) mp.push_back(io::elem_from_json(line, c, "--min-poly"));
            }
            cycles::FreeAlgebra s = cycles::FreeAlgebra::make(line, std::move(mp));
            cycles::FreeAlgebra sf = s.reduce(ctx.f());
            ReportBuilder rb;
            rb.command = "transfer";
            gen::Rng rng(seed);
            int made = 0;
            for (int it = 0; made < count && it < 100 * count + 100; ++it) {
                int n = 1 + static_cast<int>(rng.below(2));
                cycles::AlgMatrix m{sf, n, n, {}};
                for (int i = 0; i < n * n; ++i) {
                    cycles::AlgElem e;
                    for (int k = 0; k < sf.rank(); ++k) e.push_back(gen::ring_elem(rng, ctx.target()));
                    m.entries.push_back(std::move(e));
                }
                if (!ctx.target().is_unit(cycles::norm(sf, cycles::alg_det(m)))) continue;
                CheckOutcome o;
                double ms = run_ms([&] {
                    auto tr = cycles::transfer_finite(ctx, s, m, pair);
                    o.pass = tr.norm_compatible;
                    o.detail = o.pass ? "" : "det of restriction differs from the norm";
                });
                o.id = "transfer/" + pair.fiber().describe() + "/seed" + std::to_string(seed) + "/" + std::to_string(made);
                o.anchor = "transfer.norm_compatible";
                rb.add(o, ms);
                ++made;
            }
            emit(rb, out_path, false);
            return rb.failed == 0 ? 0 : 1;
        }
        if (c_locus->parsed()) {
            ReportBuilder rb;
            rb.command = "locus";
            cycles::ModulusPair pair(field, parse_poly(modulus_str, var, field), var);
            if (!input_path.empty()) {
                InstanceFile inst = load_instance_file(input_path);
                if (!(inst.ctx.f() == pair.surjection()))
                    throw io::ParseError(input_path, "instance surjection does not match --field/--modulus");
                for (const auto& [name, t] : inst.triples) {
                    if (!triple_name.empty() && name != triple_name) continue;
                    cycles::LocusResult loc = cycles::trivializing_locus(inst.ctx, t, pair, seed);
                    json pts = json::array();
                    for (const auto& q : loc.points) pts.push_back(q);
                    rb.add_info("locus/" + name, "coniveau.certificate", loc.certificate_ok,
                                json{{"points", pts}, {"det_lift", loc.det_lift}});
                }
            } else {
                RelContext ctx = RelContext::make(pair.surjection());
                gen::Rng rng(seed);
                for (int i = 0; i < count; ++i) {
                    relk0::RelTriple t = gen::random_rel_triple(rng, ctx);
                    cycles::LocusResult loc = cycles::trivializing_locus(ctx, t, pair, seed + i);
                    json pts = json::array();
                    for (const auto& q : loc.points) pts.push_back(q);
                    rb.add_info("locus/random" + std::to_string(i), "coniveau.certificate", loc.certificate_ok,
                                json{{"points", pts}, {"det_lift", loc.det_lift}});
                }
            }
            emit(rb, out_path, false);
            return rb.failed == 0 ? 0 : 1;
        }
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
