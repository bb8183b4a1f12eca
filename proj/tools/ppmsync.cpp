// ppmsync: construct, verify, certify and simulate self-synchronizing PPM codes.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ppmsync/catalog.hpp"
#include "ppmsync/dss.hpp"
#include "ppmsync/dss_search.hpp"
#include "ppmsync/error.hpp"
#include "ppmsync/io.hpp"
#include "ppmsync/modem.hpp"
#include "ppmsync/selfsync.hpp"
#include "ppmsync/tables.hpp"

using namespace ppmsync;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const std::string& text) const
    {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw InvalidArgument("cannot write " + path);
        out << text;
    }

    void json(const Json& j) const
    {
        if (format == "csv") throw InvalidArgument("this command has no CSV form; use --format json or text");
        emit(format == "json" ? j.dump() + "\n" : j.dump(2) + "\n");
    }

    // CSV as-is, JSON as an array of row objects, text as aligned columns.
    void table(const std::string& csv) const
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(csv);
        for (std::string line; std::getline(in, line);) {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
            if (!line.empty() && line.back() == ',') cells.emplace_back();
            rows.push_back(std::move(cells));
        }
        if (format == "csv") {
            emit(csv);
        } else if (format == "json") {
            Json arr = Json::array();
            for (std::size_t r = 1; r < rows.size(); ++r) {
                Json obj;
                for (std::size_t c = 0; c < rows[0].size(); ++c) obj[rows[0][c]] = c < rows[r].size() ? rows[r][c] : "";
                arr.push_back(obj);
            }
            emit(arr.dump() + "\n");
        } else {
            std::vector<std::size_t> width;
            for (const auto& r : rows) {
                width.resize(std::max(width.size(), r.size()), 0);
                for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
            }
            std::ostringstream out;
            for (const auto& r : rows) {
                for (std::size_t c = 0; c < r.size(); ++c) {
                    out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << r[c];
                }
                out << '\n';
            }
            emit(out.str());
        }
    }
};

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

// Inline JSON text, or @path to read a file.
Json json_argument(const std::string& text)
{
    if (!text.empty() && text.front() == '@') return read_json_file(text.substr(1));
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("malformed JSON argument: " + std::string(e.what()));
    }
}

ResidueSet parse_residues(const std::string& text)
{
    ResidueSet out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            const auto v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<Residue>(v));
        } catch (const std::exception&) {
            throw InvalidArgument("'" + item + "' is not a non-negative integer");
        }
    }
    return out;
}

struct MarkerArgs {
    std::string thm;
    std::uint32_t n = 0;
    std::uint64_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t m = 0;
};

void add_marker_options(CLI::App* cmd, MarkerArgs& a, const std::string& prefix = "")
{
    cmd->add_option("--" + prefix + "thm", a.thm, "Construction: index1, index2, cyc, cyc4, cyc6, 4n1, 6n1")
        ->check(CLI::IsMember({"index1", "index2", "cyc", "cyc4", "cyc6", "4n1", "6n1"}));
    cmd->add_option("--" + prefix + "n", a.n, "Order n (index1, index2, 4n1, 6n1)");
    cmd->add_option("--" + prefix + "p", a.p, "Prime p (cyc)");
    cmd->add_option("--" + prefix + "e", a.e, "Half the cyclotomic order, 2e | p-1 (cyc)");
    cmd->add_option("--" + prefix + "m", a.m, "Family parameter m (cyc4: 16m^2+1, cyc6: 108m^2+1)");
}

Dss build_marker(const MarkerArgs& a)
{
    auto need = [&](bool present, const char* what) {
        if (!present) throw InvalidArgument("--thm " + a.thm + " requires " + what);
    };
    if (a.thm == "cyc") {
        need(a.p && a.e, "--p and --e");
        return construct_cyclotomic_pair(a.p, a.e);
    }
    if (a.thm == "cyc4" || a.thm == "cyc6") {
        need(a.m, "--m");
        return a.thm == "cyc4" ? construct_quartic_family(a.m) : construct_sextic_family(a.m);
    }
    need(a.thm.empty() || a.n, "--n");
    if (a.thm == "index1") return construct_index1(a.n);
    if (a.thm == "index2") return construct_index2(a.n);
    if (a.thm == "4n1") return construct_cyclotomic_pair(a.n, 2);
    if (a.thm == "6n1") return construct_cyclotomic_pair(a.n, 3);
    throw InvalidArgument("a construction (--thm) is required");
}

std::string format_double(double v)
{
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

// Catalog entry named by id, or by M and scheme with optional Q and K.
struct CodeArgs {
    std::string id;
    std::string scheme;
    std::uint32_t m = 0;
    std::uint32_t q = 0;
    std::uint32_t k = 0;
};

void add_code_options(CLI::App* cmd, CodeArgs& a)
{
    cmd->add_option("--code", a.id, "Catalog id, e.g. GEPPM-16-16-4");
    cmd->add_option("--scheme", a.scheme, "Scheme tag: PPM, MPPM, EPPM, AEPPM, GEPPM");
    cmd->add_option("--M", a.m, "Number of symbols");
    cmd->add_option("--Q", a.q, "Interval size, to disambiguate");
    cmd->add_option("--K", a.k, "Pulses per symbol, to disambiguate");
}

const CatalogEntry& lookup(const CodeArgs& a)
{
    if (!a.id.empty()) return catalog_lookup(a.id);
    if (a.scheme.empty() || a.m == 0) {
        throw InvalidArgument("name a code with --code ID or --scheme and --M; available: " + catalog_ids());
    }
    return catalog_lookup(a.m, parse_scheme(a.scheme), a.q ? std::optional(a.q) : std::nullopt,
                          a.k ? std::optional(a.k) : std::nullopt);
}

Codebook constant_weight_book(const CatalogEntry& e)
{
    auto book = e.book();
    if (!book) throw InvalidArgument(e.id + " mixes word weights and has no constant-weight book");
    return *book;
}

// Smallest index-two marker whose free capacity equals q.
Dss sync_marker_for(std::uint32_t q)
{
    for (std::uint32_t n = q + 2; n < 4 * q + 16; ++n) {
        const auto d = construct_index2(n);
        if (d.free_capacity() == q) return d;
    }
    throw InternalError("no index-two marker with free capacity " + std::to_string(q));
}

std::vector<double> gamma_grid_db(const std::vector<double>& list, double from, double to, double step)
{
    if (!list.empty()) return list;
    if (!(step > 0.0) || to < from) throw InvalidArgument("gamma grid needs --db-from <= --db-to and --db-step > 0");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double db = from + i * step;
        if (db > to + 1e-9) break;
        out.push_back(db);
    }
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Self-synchronizing pulse position modulation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    app.add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("-o,--output", out.path, "Write output to a file instead of stdout");

    int status = kOk;
    std::function<void()> action;

    // construct-dss
    MarkerArgs cons;
    auto* construct = app.add_subcommand("construct-dss", "Build a marker and verify it by census");
    add_marker_options(construct, cons);
    construct->callback([&] {
        action = [&] {
            if (cons.thm.empty()) throw InvalidArgument("--thm is required");
            const auto dss = build_marker(cons);
            Json j{{"construction", cons.thm}, {"dss", to_json(dss)}, {"report", to_json(verify(dss))}};
            if (cons.thm == "4n1") j["predicted_index"] = predicted_index_4n1(cons.n);
            if (cons.thm == "6n1") {
                const auto r = predicted_index_6n1(cons.n);
                j["predicted_index"] = r.index;
                j["y_sign"] = r.y_sign;
            }
            out.json(j);
        };
    });

    // verify-dss
    std::string vd_file, vd_d0, vd_d1;
    std::uint32_t vd_n = 0;
    std::uint64_t vd_min = 0;
    auto* verify_cmd = app.add_subcommand("verify-dss", "Census a marker given by sets or JSON");
    verify_cmd->add_option("--dss", vd_file, "Marker JSON, inline or @file");
    verify_cmd->add_option("--n", vd_n, "Order");
    verify_cmd->add_option("--d0", vd_d0, "Comma-separated residues of D0");
    verify_cmd->add_option("--d1", vd_d1, "Comma-separated residues of D1");
    verify_cmd->add_option("--min-index", vd_min, "Exit 1 unless the index reaches this value");
    verify_cmd->callback([&] {
        action = [&] {
            const auto dss = !vd_file.empty() ? dss_from_json(json_argument(vd_file))
                                              : Dss(vd_n, parse_residues(vd_d0), parse_residues(vd_d1));
            const auto report = verify(dss);
            Json census = Json::object();
            const auto counts = outer_difference_census(dss);
            for (std::size_t d = 1; d < counts.size(); ++d) census[std::to_string(d)] = counts[d];
            out.json({{"dss", to_json(dss)}, {"report", to_json(report)}, {"census", census}});
            if (report.index < vd_min) status = kVerificationFailed;
        };
    });

    // search-dss
    std::uint32_t s_n = 0, s_from = 0;
    std::uint64_t s_rho = 0, s_limit = SearchOptions{}.node_limit;
    auto* search = app.add_subcommand("search-dss", "Exhaustive minimum-redundancy marker search (n <= 40)");
    search->add_option("--n", s_n, "Order")->required();
    search->add_option("--rho", s_rho, "Target index")->required();
    search->add_option("--from-redundancy", s_from, "Enumerate from this redundancy instead of the bound");
    search->add_option("--node-limit", s_limit, "Abort after this many search nodes");
    search->callback([&] {
        action = [&] {
            SearchOptions options;
            options.from_redundancy = s_from;
            options.node_limit = s_limit;
            out.json(to_json(search_optimal_dss(s_n, s_rho, options)));
        };
    });

    // build-ooc
    std::uint32_t o_v = 0, o_k = 0, o_lambda = 0;
    std::vector<std::string> o_words;
    CodeArgs o_code;
    auto* build = app.add_subcommand("build-ooc", "Validate an optical orthogonal code");
    build->add_option("--v", o_v, "Length");
    build->add_option("--k", o_k, "Weight");
    build->add_option("--lambda", o_lambda, "Correlation index");
    build->add_option("--codeword", o_words, "Comma-separated support; repeat for each codeword");
    add_code_options(build, o_code);
    build->callback([&] {
        action = [&] {
            std::optional<OpticalOrthogonalCode> code;
            if (!o_code.id.empty() || !o_code.scheme.empty()) {
                const auto& e = lookup(o_code);
                if (!e.ooc) throw InvalidArgument(e.id + " is not defined by an optical orthogonal code");
                code = *e.ooc;
            } else {
                std::vector<Support> words;
                for (const auto& w : o_words) words.push_back(parse_residues(w));
                try {
                    code.emplace(o_v, o_k, o_lambda, std::move(words));
                } catch (const ValidationFailure& e) {
                    std::cerr << "invalid code: " << e.what() << '\n';
                    status = kVerificationFailed;
                    return;
                }
            }
            const auto c = code->correlations();
            Json j = to_json(*code);
            j["max_auto"] = c.max_auto;
            j["max_cross"] = c.max_cross;
            if (code->v() > code->k()) {
                j["johnson_bound"] = johnson_bound(code->v(), code->k(), code->lambda());
                j["optimal"] = is_optimal(*code);
            }
            if (code->size() == 1) {
                const auto mu = is_difference_set(code->codewords().front(), code->v());
                j["difference_set_mu"] = mu ? Json(*mu) : Json(nullptr);
            }
            out.json(j);
        };
    });

    // expand
    CodeArgs e_code;
    std::string e_ooc;
    std::size_t e_m = 0;
    auto* expand = app.add_subcommand("expand", "Orbit-expand a code into its modulation book");
    add_code_options(expand, e_code);
    expand->add_option("--ooc", e_ooc, "OOC JSON, inline or @file");
    expand->add_option("--take", e_m, "Keep only the first M words");
    expand->callback([&] {
        action = [&] {
            auto book = !e_ooc.empty() ? expand_orbits(ooc_from_json(json_argument(e_ooc)))
                                       : constant_weight_book(lookup(e_code));
            if (e_m) book = book.first(e_m);
            if (out.format == "json") {
                out.json(to_json(book));
            } else {
                out.emit(export_codebook(book));
            }
        };
    });

    // combine
    MarkerArgs c_marker;
    std::string c_dss, c_payload;
    bool c_certify = false;
    auto* comb = app.add_subcommand("combine", "Merge a marker and a payload book into a self-synchronizing code");
    add_marker_options(comb, c_marker, "marker-");
    comb->add_option("--dss", c_dss, "Marker JSON, inline or @file (instead of --marker-thm)");
    comb->add_option("--payload", c_payload, "Payload description JSON, inline or @file")->required();
    comb->add_flag("--certify", c_certify, "Also run the exhaustive comma-free check");
    comb->callback([&] {
        action = [&] {
            const auto marker = !c_dss.empty() ? dss_from_json(json_argument(c_dss)) : build_marker(c_marker);
            auto code = combine(marker, payload_from_json(json_argument(c_payload)));
            if (c_certify) code.certify();
            out.json(to_json(code));
        };
    });

    // certify
    std::string cf_bundle;
    std::uint32_t cf_threshold = 1;
    std::uint64_t cf_limit = 0;
    auto* cert = app.add_subcommand("certify", "Exhaustively certify the comma-free index of a bundle");
    cert->add_option("--bundle", cf_bundle, "Bundle JSON file: {\"marker\"?, \"payload\"}")->required();
    cert->add_option("--threshold", cf_threshold, "Exit 0 only if the certified index reaches this value")
        ->capture_default_str();
    cert->add_option("--work-limit", cf_limit, "Comparison cap (default PPMSYNC_WORKLIMIT or built-in)");
    cert->callback([&] {
        action = [&] {
            const auto bundle = read_json_file(cf_bundle);
            if (!bundle.contains("payload")) throw InvalidArgument("bundle has no \"payload\"");
            const auto payload = payload_from_json(bundle.at("payload"));
            Json j;
            CommaFreeResult r;
            std::uint64_t lower_bound = 0;
            if (bundle.contains("marker")) {
                auto code = combine(dss_from_json(bundle.at("marker")), payload);
                r = code.certify(cf_limit);
                lower_bound = verify(code.marker()).index;
                j["marker_index"] = lower_bound;
            } else {
                std::vector<Bits> words;
                for (std::size_t i = 0; i < payload.size(); ++i) words.push_back(payload.bits(i));
                CommaFreeOptions options;
                options.work_limit = cf_limit;
                r = comma_free_index(words, options);
            }
            j["certificate"] = to_json(r);
            if (r.certified) {
                j["status"] = "certified";
                j["comma_free_index"] = *r.index;
                status = *r.index >= cf_threshold ? kOk : kVerificationFailed;
            } else {
                j["status"] = "uncertified";
                j["lower_bound"] = lower_bound;
                status = kVerificationFailed;
            }
            j["threshold"] = cf_threshold;
            out.json(j);
        };
    });

    // table
    std::string t_which, t_golden;
    auto* table = app.add_subcommand("table", "Regenerate a published table and check it against golden values");
    table->add_option("which", t_which, "table1 or table3")->required()->check(CLI::IsMember({"table1", "table3"}));
    table->add_option("--golden", t_golden, "Golden CSV to compare against instead of the built-in values");
    table->callback([&] {
        action = [&] {
            const auto produced = t_which == "table1" ? table1_csv(regenerate_table1())
                                                      : table3_csv(regenerate_table3());
            std::string golden = t_which == "table1" ? golden_table1_csv() : golden_table3_csv();
            if (!t_golden.empty()) {
                std::ifstream in(t_golden);
                if (!in) throw InvalidArgument("cannot read " + t_golden);
                golden.assign(std::istreambuf_iterator<char>(in), {});
            }
            out.table(produced);
            const auto problems = compare_tables(produced, golden);
            for (const auto& p : problems) std::cerr << t_which << " mismatch, " << p << '\n';
            if (!problems.empty()) status = kVerificationFailed;
        };
    });

    // simulate
    CodeArgs sim_code;
    std::vector<double> sim_db;
    double db_from = 0.0, db_to = 12.0, db_step = 1.0;
    std::uint64_t sim_seed = 1, sim_trials = 10'000;
    bool sim_sync = false;
    auto* sim = app.add_subcommand("simulate", "Union bound and Monte Carlo symbol error curve");
    add_code_options(sim, sim_code);
    sim->add_option("--gamma-db", sim_db, "Explicit SNR points in dB");
    sim->add_option("--db-from", db_from, "First SNR point in dB")->capture_default_str();
    sim->add_option("--db-to", db_to, "Last SNR point in dB")->capture_default_str();
    sim->add_option("--db-step", db_step, "SNR step in dB")->capture_default_str();
    sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    sim->add_option("--trials", sim_trials, "Trials per SNR point")->capture_default_str();
    sim->add_flag("--sync", sim_sync, "Also measure soft synchronization with an index-two marker");
    sim->callback([&] {
        action = [&] {
            if (sim_trials == 0) throw InvalidArgument("--trials must be at least 1");
            const auto book = constant_weight_book(lookup(sim_code));
            std::optional<SelfSyncCode> code;
            if (sim_sync) code.emplace(sync_marker_for(book.length()), book);
            std::ostringstream csv;
            csv << "gamma_db,ser_bound,ser_mc,ser_mc_lo,ser_mc_hi,sync_err\n";
            for (double db : gamma_grid_db(sim_db, db_from, db_to, db_step)) {
                const auto r = monte_carlo(book, {db_to_linear(db), sim_seed, sim_trials}, code ? &*code : nullptr);
                csv << format_double(db) << ',' << format_double(r.ser_bound) << ',' << format_double(r.ser_mc)
                    << ',' << format_double(r.ser_ci.lo) << ',' << format_double(r.ser_ci.hi) << ','
                    << (r.sync_err_mc ? format_double(*r.sync_err_mc) : "") << '\n';
            }
            out.table(csv.str());
        };
    });

    // bound
    CodeArgs b_code;
    std::uint32_t b_v = 0, b_k = 0, b_size = 1;
    std::vector<double> b_db;
    auto* bound = app.add_subcommand("bound", "Union bound on symbol error rate");
    add_code_options(bound, b_code);
    bound->add_option("--v", b_v, "OOC length (index-one two-shell form)");
    bound->add_option("--k", b_k, "OOC weight");
    bound->add_option("--size", b_size, "Number of OOC codewords |C|")->capture_default_str();
    bound->add_option("--gamma-db", b_db, "SNR points in dB")->required();
    bound->callback([&] {
        action = [&] {
            std::optional<Codebook> book;
            if (!b_code.id.empty() || !b_code.scheme.empty()) book = constant_weight_book(lookup(b_code));
            if (!book && (b_v == 0 || b_k == 0)) throw InvalidArgument("give --v and --k, or a catalog code");
            std::ostringstream csv;
            csv << "gamma_db,ser_bound\n";
            for (double db : b_db) {
                const double g = db_to_linear(db);
                const double b = book ? ser_union_bound(*book, g) : ser_union_bound(b_v, b_k, b_size, g);
                csv << format_double(db) << ',' << format_double(b) << '\n';
            }
            out.table(csv.str());
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (action) action();
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NotFound& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConstructionInapplicable& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return status;
}
