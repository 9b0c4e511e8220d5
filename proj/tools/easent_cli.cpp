#include "easent/data_ingest.hpp"
#include "easent/error.hpp"
#include "easent/pipeline.hpp"
#include "easent/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace easent;
using nlohmann::json;

namespace {

struct Flags {
    std::string config;
    std::string data_dir;
    std::string prices, index, tweets, events;
    std::string out;
    std::optional<std::uint64_t> seed;

    std::optional<long> polarity_day;
    std::string timing;
    std::optional<long> max_d;
    std::optional<double> spread;
    std::string from, to, threshold_end;
    std::optional<long> radius;
    std::optional<double> cutoff;
    std::string spec;
    bool strict = false;
};

Date flag_date(const std::string& s, const char* name) {
    auto d = parse_date(s);
    if (!d) {
        throw Error(ErrorKind::InvalidConfig, std::string(name) + ": bad date '" + s + "'");
    }
    return *d;
}

pipeline::RunConfig resolve(const Flags& f) {
    pipeline::RunConfig c = f.config.empty() ? pipeline::RunConfig{} : pipeline::load_config(f.config);
    if (!f.data_dir.empty()) c.data_dir = f.data_dir;
    if (!f.prices.empty()) c.prices_path = f.prices;
    if (!f.index.empty()) c.index_path = f.index;
    if (!f.tweets.empty()) c.tweets_path = f.tweets;
    if (!f.events.empty()) c.events_path = f.events;
    if (!f.out.empty()) c.out_dir = f.out;
    if (f.seed) c.seed = *f.seed;
    if (f.polarity_day) c.polarity_day = *f.polarity_day;
    if (!f.timing.empty()) {
        if (f.timing == "both") {
            c.timing.reset();
        } else if (f.timing == "afterclose") {
            c.timing = Timing::AfterClose;
        } else if (f.timing == "beforeopen") {
            c.timing = Timing::BeforeOpen;
        } else {
            throw Error(ErrorKind::InvalidConfig, "--timing must be afterclose, beforeopen or both");
        }
    }
    if (f.max_d) c.max_d = *f.max_d;
    if (f.spread) c.spread = *f.spread;
    if (!f.from.empty()) c.backtest_from = flag_date(f.from, "--from");
    if (!f.to.empty()) c.backtest_to = flag_date(f.to, "--to");
    if (!f.threshold_end.empty()) c.threshold_end = flag_date(f.threshold_end, "--threshold-end");
    if (f.radius) c.volume_radius = *f.radius;
    if (f.cutoff) c.surprise_cutoff = *f.cutoff;
    c.validate();
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open " + p.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Loaded {
    ingest::DatasetText text;
    Dataset dataset;
};

Loaded load(const pipeline::RunConfig& c) {
    const auto p = c.paths();
    Loaded l{{slurp(p.prices), slurp(p.index), slurp(p.tweets), slurp(p.events)}, {}};
    l.dataset = ingest::load_dataset(l.text);
    return l;
}

json input_hashes(const ingest::DatasetText& t) {
    return {{"prices.csv", pipeline::sha256_hex(t.prices)},
            {"index.csv", pipeline::sha256_hex(t.index)},
            {"tweets.csv", pipeline::sha256_hex(t.tweets)},
            {"events.csv", pipeline::sha256_hex(t.events)}};
}

json base_manifest(const std::string& command, const pipeline::RunConfig& c,
                   const std::map<std::string, std::string>& files) {
    json cfg;
    pipeline::to_json(cfg, c);
    json outputs = json::object();
    for (const auto& [name, content] : files) {
        outputs[name] = pipeline::sha256_hex(content);
    }
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return {{"tool", "easent"},
            {"version", "1.0.0"},
            {"command", command},
            {"generated_at_utc", format_rfc3339(now)},
            {"config", cfg},
            {"outputs", outputs}};
}

void emit(const std::string& command, const pipeline::RunConfig& c, std::map<std::string, std::string> files,
          json extra = json::object()) {
    json manifest = base_manifest(command, c, files);
    manifest.update(extra);
    files["manifest.json"] = manifest.dump(2) + "\n";
    pipeline::write_outputs(c.out_dir, files);
    for (const auto& [name, content] : files) {
        std::cout << (c.out_dir / name).string() << "\n";
    }
}

std::vector<pipeline::Stratum> selected_strata(const pipeline::RunConfig& c, bool both_days) {
    std::vector<pipeline::Stratum> out;
    for (const auto& s : pipeline::kStrata) {
        if (c.timing && s.timing != *c.timing) {
            continue;
        }
        if (!both_days && s.day != c.polarity_day) {
            continue;
        }
        out.push_back(s);
    }
    return out;
}

int cmd_ingest(const pipeline::RunConfig& c, bool strict) {
    const auto p = c.paths();
    const ingest::DatasetText text{slurp(p.prices), slurp(p.index), slurp(p.tweets), slurp(p.events)};
    const auto report = ingest::parse_dataset(text);
    const auto covered = ingest::apply_coverage(report.dataset);
    std::size_t excluded = 0;
    for (const auto& e : covered.events) {
        excluded += e.excluded ? 1 : 0;
    }
    json tallies = json::array();
    for (const auto& t : report.tallies) {
        tallies.push_back({{"file", t.file}, {"rows", t.rows}, {"accepted", t.accepted}, {"rejected", t.rejected}});
        std::cerr << t.file << ": " << t.rows << " rows, " << t.accepted << " accepted, " << t.rejected
                  << " rejected\n";
    }
    std::cerr << covered.events.size() << " events, " << excluded << " excluded\n";
    if (strict && !report.diagnostics.empty()) {
        const auto& d = report.diagnostics.front();
        throw Error(d.kind, d.describe(), d.row);
    }
    emit("ingest", c, {{"ingest_report.csv", pipeline::ingest_report_csv(report)}},
         {{"inputs", input_hashes(text)}, {"tallies", tallies}, {"n_diagnostics", report.diagnostics.size()}});
    return 0;
}

int cmd_analysis(const std::string& command, const pipeline::RunConfig& c) {
    const auto l = load(c);
    const pipeline::Analysis a(l.dataset, c);
    std::map<std::string, std::string> files;
    json extra{{"inputs", input_hashes(l.text)}};

    if (command == "calendar") {
        files["calendar.csv"] = pipeline::calendar_csv(a.calendar());
    } else if (command == "score") {
        files["scores.csv"] = pipeline::score_csv(a.daily());
    } else if (command == "thresholds") {
        std::vector<std::string> skipped;
        const auto th = pipeline::all_thresholds(a, &skipped);
        files["thresholds.csv"] = pipeline::thresholds_csv(th);
        files["thresholds_table.csv"] = pipeline::thresholds_table_csv(th);
        extra["skipped"] = skipped;
    } else if (command == "returns") {
        files["returns.csv"] = pipeline::returns_csv(a.dataset(), a.calendar());
    } else if (command == "surprise") {
        files["surprise.csv"] = pipeline::surprise_csv(a.events());
    } else if (command == "study") {
        for (const auto& s : selected_strata(c, false)) {
            files["study_" + s.label() + ".csv"] = pipeline::study_csv(a.study(s));
        }
    } else if (command == "curves") {
        for (const auto& s : selected_strata(c, false)) {
            files["curves_" + s.label() + ".csv"] = pipeline::curves_csv(a.curves(s));
        }
    } else if (command == "backtest") {
        const auto ledger = a.backtest();
        files["trades.csv"] = pipeline::trades_csv(ledger);
        files["equity.csv"] = pipeline::equity_csv(ledger);
        extra["n_trades"] = ledger.trades.size();
        extra["final_equity"] = ledger.final_equity();
        extra["final_benchmark"] = ledger.final_benchmark();
    } else if (command == "regress") {
        std::vector<regression::RegressionFit> fits;
        for (const auto& s : selected_strata(c, true)) {
            fits.push_back(a.regress(s));
        }
        files["regression.csv"] = pipeline::regression_csv(fits);
    } else if (command == "volume") {
        const auto v = a.volume();
        files["volume_daily.csv"] = pipeline::volume_daily_csv(v);
        files["volume_hourly.csv"] = pipeline::volume_hourly_csv(v);
        files["volume_summary.csv"] = pipeline::volume_summary_csv(v);
    }
    emit(command, c, std::move(files), extra);
    return 0;
}

int cmd_pipeline(const pipeline::RunConfig& c) {
    auto res = pipeline::run_pipeline(c);
    res.manifest["command"] = "pipeline";
    res.files["manifest.json"] = res.manifest.dump(2) + "\n";
    pipeline::write_outputs(c.out_dir, res.files);
    for (const auto& [name, content] : res.files) {
        std::cout << (c.out_dir / name).string() << "\n";
    }
    return 0;
}

int cmd_synth(const Flags& f) {
    synth::SynthSpec spec;
    if (!f.spec.empty()) {
        try {
            synth::from_json(json::parse(slurp(f.spec)), spec);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::InvalidSpec, f.spec + ": " + e.what());
        }
    }
    if (f.seed) {
        spec.seed = *f.seed;
    }
    spec.validate();
    const std::filesystem::path out = f.out.empty() ? std::filesystem::path("synth") : std::filesystem::path(f.out);
    const auto text = ingest::format_dataset(synth::generate(spec));
    json spec_json;
    synth::to_json(spec_json, spec);
    std::map<std::string, std::string> files{
        {"prices.csv", text.prices}, {"index.csv", text.index}, {"tweets.csv", text.tweets}, {"events.csv", text.events}};
    json outputs = json::object();
    for (const auto& [name, content] : files) {
        outputs[name] = pipeline::sha256_hex(content);
    }
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const json manifest{{"tool", "easent"},          {"version", "1.0.0"},   {"command", "synth"},
                        {"generated_at_utc", format_rfc3339(now)}, {"spec", spec_json}, {"outputs", outputs}};
    files["manifest.json"] = manifest.dump(2) + "\n";
    pipeline::write_outputs(out, files);
    for (const auto& [name, content] : files) {
        std::cout << (out / name).string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Earnings-announcement sentiment event studies"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", f.out, "Output directory");
    app.add_option("--seed", f.seed, "Random seed");
    app.add_option("--data-dir", f.data_dir, "Directory holding prices/index/tweets/events CSVs");
    app.add_option("--prices", f.prices, "prices.csv path");
    app.add_option("--index", f.index, "index.csv path");
    app.add_option("--tweets", f.tweets, "tweets.csv path");
    app.add_option("--events", f.events, "events.csv path");

    const std::pair<const char*, const char*> analysis_cmds[] = {
        {"calendar", "Dump the trading calendar"},
        {"score", "Per-day tweet counts and sentiment scores"},
        {"thresholds", "Tercile thresholds for the four strata"},
        {"returns", "Per-ticker daily returns"},
        {"surprise", "Earnings surprise per event"},
        {"study", "Event study CAR series"},
        {"curves", "Trade-return curves"},
        {"backtest", "Short-on-negative-sentiment strategy"},
        {"regress", "Earnings surprise vs sentiment regressions"},
        {"volume", "Tweet and trading volume around announcements"},
        {"pipeline", "Full analysis with manifest"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, desc] : analysis_cmds) {
        subs[name] = app.add_subcommand(name, desc);
    }
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate the input CSVs");
    ingest_cmd->add_flag("--strict", f.strict, "Fail on the first rejected row");
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth_cmd->add_option("--spec", f.spec, "JSON synth spec")->check(CLI::ExistingFile);

    for (const char* name : {"study", "curves", "pipeline"}) {
        subs[name]->add_option("--polarity-day", f.polarity_day, "Sentiment day used for classes (0 or -1)")
            ->check(CLI::IsMember({0L, -1L}));
        subs[name]->add_option("--timing", f.timing, "afterclose, beforeopen or both")
            ->check(CLI::IsMember({"afterclose", "beforeopen", "both"}));
    }
    subs["regress"]->add_option("--timing", f.timing, "afterclose, beforeopen or both")
        ->check(CLI::IsMember({"afterclose", "beforeopen", "both"}));
    for (const char* name : {"curves", "pipeline"}) {
        subs[name]->add_option("--max-d", f.max_d, "Last holding day");
    }
    for (const char* name : {"backtest", "pipeline"}) {
        subs[name]->add_option("--spread", f.spread, "Round-trip spread in price units");
        subs[name]->add_option("--from", f.from, "First backtest date");
        subs[name]->add_option("--to", f.to, "Last backtest date");
    }
    for (const char* name : {"thresholds", "study", "curves", "backtest", "pipeline"}) {
        subs[name]->add_option("--threshold-end", f.threshold_end, "Last day 0 used for thresholds");
    }
    for (const char* name : {"volume", "pipeline"}) {
        subs[name]->add_option("--radius", f.radius, "Relative-day radius of the daily volume table");
    }
    subs["surprise"]->add_option("--cutoff", f.cutoff, "Surprise magnitude cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth_cmd->parsed()) {
            return cmd_synth(f);
        }
        const auto cfg = resolve(f);
        if (ingest_cmd->parsed()) {
            return cmd_ingest(cfg, f.strict);
        }
        if (subs["pipeline"]->parsed()) {
            return cmd_pipeline(cfg);
        }
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) {
                return cmd_analysis(name, cfg);
            }
        }
    } catch (const Error& e) {
        std::cerr << "easent: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "easent: Io: " << e.what() << "\n";
        return exit_code(ErrorKind::Io);
    } catch (const std::exception& e) {
        std::cerr << "easent: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
