#include "diffract/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace diffract::io {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path) {
    std::string content = read_file(path);
    CsvTable table;
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("missing CSV header in " + path.string());
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size())
            throw std::runtime_error("ragged CSV row in " + path.string());
        table.rows.push_back(std::move(fields));
    }
    return table;
}

void expect_header(const CsvTable& table, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
    if (table.header != expected)
        throw std::runtime_error("unexpected CSV header in " + path.string());
}

long long parse_ll(const std::string& s) {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::runtime_error("cannot parse integer '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw std::runtime_error("cannot parse number '" + s + "'");
    return v;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_window_csv(const std::filesystem::path& path,
                      const SymbolicWindow& window,
                      const std::map<std::string, Complex>& weights) {
    WeightedComb comb = make_comb(window, weights);
    std::ostringstream out;
    out << "n,symbol,re(w),im(w)\n";
    for (long long n = window.lo; n <= window.hi(); ++n) {
        Complex w = comb.at(n);
        out << n << ',' << window.alphabet[window.at(n)] << ','
            << format_double(w.real()) << ',' << format_double(w.imag()) << '\n';
    }
    atomic_write(path, out.str());
}

WindowData read_window_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    expect_header(table, {"n", "symbol", "re(w)", "im(w)"}, path);
    if (table.rows.empty()) throw std::runtime_error("empty window in " + path.string());
    WindowData data;
    data.lo = parse_ll(table.rows.front()[0]);
    long long expected = data.lo;
    for (const auto& row : table.rows) {
        if (parse_ll(row[0]) != expected++)
            throw std::runtime_error("window indices must ascend by one");
        data.symbols.push_back(row[1]);
        data.weights.emplace_back(parse_double(row[2]), parse_double(row[3]));
    }
    return data;
}

bool same_window(const WindowData& data, const SymbolicWindow& window,
                 const std::map<std::string, Complex>& weights) {
    if (data.lo != window.lo ||
        data.symbols.size() != window.symbols.size())
        return false;
    for (long long n = window.lo; n <= window.hi(); ++n) {
        std::size_t i = static_cast<std::size_t>(n - window.lo);
        const std::string& name = window.alphabet[window.at(n)];
        if (data.symbols[i] != name) return false;
        if (data.weights[i] != weights.at(name)) return false;
    }
    return true;
}

namespace {

const char* kind_label(SeriesKind kind) {
    return kind == SeriesKind::exact ? "exact" : "empirical";
}

}  // namespace

void write_series_csv(const std::filesystem::path& path,
                      const CorrelationSeries& series) {
    std::ostringstream out;
    out << (series.has_theta() ? "m,re_eta,im_eta,re_theta,im_theta,kind"
                               : "m,re_eta,im_eta,kind")
        << '\n';
    for (long long m = -series.max_lag(); m <= series.max_lag(); ++m) {
        Complex e = series.eta(m);
        out << m << ',' << format_double(e.real()) << ',' << format_double(e.imag());
        if (series.has_theta()) {
            Complex t = series.theta(m);
            out << ',' << format_double(t.real()) << ',' << format_double(t.imag());
        }
        out << ',' << kind_label(series.kind()) << '\n';
    }
    atomic_write(path, out.str());
}

void write_series_sidecar_json(const std::filesystem::path& path,
                               const CorrelationSeries& series) {
    if (!series.has_exact_values())
        throw std::invalid_argument("series carries no exact rational values");
    json doc;
    doc["schema"] = 1;
    doc["max_lag"] = series.max_lag();
    json values = json::array();
    for (long long m = -series.max_lag(); m <= series.max_lag(); ++m) {
        json entry;
        entry["m"] = m;
        entry["eta_re"] = series.eta_exact(m).re.to_string();
        entry["eta_im"] = series.eta_exact(m).im.to_string();
        if (series.has_theta()) {
            entry["theta_re"] = series.theta_exact(m).re.to_string();
            entry["theta_im"] = series.theta_exact(m).im.to_string();
        }
        values.push_back(entry);
    }
    doc["values"] = values;
    atomic_write(path, doc.dump(2) + "\n");
}

CorrelationSeries read_series_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    bool with_theta = table.header.size() == 6;
    expect_header(table,
                  with_theta
                      ? std::vector<std::string>{"m", "re_eta", "im_eta", "re_theta",
                                                 "im_theta", "kind"}
                      : std::vector<std::string>{"m", "re_eta", "im_eta", "kind"},
                  path);
    if (table.rows.size() % 2 == 0)
        throw std::runtime_error("series must cover lags -M..M");
    long long M = static_cast<long long>(table.rows.size() / 2);
    std::vector<Complex> eta;
    std::vector<Complex> theta;
    std::string kind = table.rows.front().back();
    long long expected = -M;
    for (const auto& row : table.rows) {
        if (parse_ll(row[0]) != expected++)
            throw std::runtime_error("series lags must ascend by one");
        eta.emplace_back(parse_double(row[1]), parse_double(row[2]));
        if (with_theta)
            theta.emplace_back(parse_double(row[3]), parse_double(row[4]));
        if (row.back() != kind)
            throw std::runtime_error("mixed kind column in " + path.string());
    }
    if (kind == "empirical")
        return CorrelationSeries::empirical(std::move(eta), std::nullopt);
    if (kind != "exact") throw std::runtime_error("unknown series kind '" + kind + "'");
    // Without the sidecar only the double view is recoverable.
    return CorrelationSeries::exact_double(std::move(eta));
}

CorrelationSeries read_series_with_sidecar(const std::filesystem::path& csv_path,
                                           const std::filesystem::path& sidecar_path) {
    CorrelationSeries doubles = read_series_csv(csv_path);
    json doc = json::parse(read_file(sidecar_path));
    long long M = doc.at("max_lag").get<long long>();
    if (M != doubles.max_lag())
        throw std::runtime_error("sidecar lag range differs from the CSV");
    std::vector<RatComplex> eta(static_cast<std::size_t>(2 * M + 1));
    std::optional<std::vector<RatComplex>> theta;
    for (const auto& entry : doc.at("values")) {
        long long m = entry.at("m").get<long long>();
        RatComplex e{Rational::parse(entry.at("eta_re").get<std::string>()),
                     Rational::parse(entry.at("eta_im").get<std::string>())};
        eta[static_cast<std::size_t>(m + M)] = e;
        if (entry.contains("theta_re")) {
            if (!theta)
                theta.emplace(static_cast<std::size_t>(2 * M + 1));
            (*theta)[static_cast<std::size_t>(m + M)] =
                RatComplex{Rational::parse(entry.at("theta_re").get<std::string>()),
                           Rational::parse(entry.at("theta_im").get<std::string>())};
        }
    }
    return CorrelationSeries::exact(std::move(eta), std::move(theta));
}

void write_distribution_csv(const std::filesystem::path& path,
                            const DistributionFunction& F) {
    std::ostringstream out;
    out << "x,F\n";
    for (long long i = 0; i <= F.grid; ++i)
        out << format_double(static_cast<double>(i) / static_cast<double>(F.grid))
            << ',' << format_double(F.at_index(i)) << '\n';
    atomic_write(path, out.str());
}

void write_distribution_meta_json(const std::filesystem::path& path,
                                  const DistributionFunction& F) {
    json doc;
    doc["schema"] = 1;
    doc["method"] = F.method;
    doc["grid"] = F.grid;
    doc["converged"] = F.converged;
    for (const auto& [key, value] : F.params) doc["params"][key] = value;
    atomic_write(path, doc.dump(2) + "\n");
}

DistributionFunction read_distribution_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    expect_header(table, {"x", "F"}, path);
    if (table.rows.size() < 2) throw std::runtime_error("distribution needs >= 2 rows");
    DistributionFunction F;
    F.grid = static_cast<long long>(table.rows.size()) - 1;
    F.method = "csv";
    for (const auto& row : table.rows) F.values.push_back(parse_double(row[1]));
    for (std::size_t i = 0; i + 1 < F.values.size(); ++i)
        F.increments.push_back(F.values[i + 1] - F.values[i]);
    return F;
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const PurePointSpectrum& spectrum) {
    std::ostringstream out;
    out << "k_num,k_den,intensity\n";
    for (const Peak& peak : spectrum.peaks)
        out << peak.k_num << ',' << peak.k_den << ','
            << format_double(peak.intensity) << '\n';
    atomic_write(path, out.str());
}

PurePointSpectrum read_spectrum_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    expect_header(table, {"k_num", "k_den", "intensity"}, path);
    PurePointSpectrum spectrum;
    for (const auto& row : table.rows) {
        Peak peak;
        peak.k_num = parse_ll(row[0]);
        peak.k_den = parse_ll(row[1]);
        peak.k = static_cast<double>(peak.k_num) / static_cast<double>(peak.k_den);
        peak.intensity = parse_double(row[2]);
        spectrum.peaks.push_back(peak);
    }
    return spectrum;
}

void write_mc_report_json(const std::filesystem::path& path,
                          const MonteCarloReport& report) {
    json doc;
    doc["schema"] = 1;
    doc["spec"] = {{"p", report.p},
                   {"half_length", report.half_length},
                   {"seed", report.seed},
                   {"bernoullisation", report.bernoullisation}};
    doc["trials"] = report.trials;
    doc["max_lag"] = report.max_lag;
    doc["band"] = report.band;
    json lags = json::array();
    for (const auto& stat : report.lags) {
        json entry;
        entry["m"] = stat.m;
        entry["mean"] = stat.mean;
        entry["standard_error"] = stat.standard_error;
        if (stat.predicted) {
            entry["predicted"] = *stat.predicted;
            entry["trials_within_band"] = stat.trials_within_band;
            entry["band_pass"] =
                stat.m == 0 ||
                static_cast<double>(stat.trials_within_band) >=
                    0.95 * static_cast<double>(report.trials);
        }
        lags.push_back(entry);
    }
    doc["lags"] = lags;
    atomic_write(path, doc.dump(2) + "\n");
}

MonteCarloReport read_mc_report_json(const std::filesystem::path& path) {
    json doc = json::parse(read_file(path));
    MonteCarloReport report;
    report.p = doc.at("spec").at("p").get<double>();
    report.half_length = doc.at("spec").at("half_length").get<long long>();
    report.seed = doc.at("spec").at("seed").get<std::uint64_t>();
    report.bernoullisation = doc.at("spec").at("bernoullisation").get<bool>();
    report.trials = doc.at("trials").get<long long>();
    report.max_lag = doc.at("max_lag").get<long long>();
    report.band = doc.at("band").get<double>();
    for (const auto& entry : doc.at("lags")) {
        MonteCarloReport::LagStats stat;
        stat.m = entry.at("m").get<long long>();
        stat.mean = entry.at("mean").get<double>();
        stat.standard_error = entry.at("standard_error").get<double>();
        if (entry.contains("predicted")) {
            stat.predicted = entry.at("predicted").get<double>();
            stat.trials_within_band = entry.at("trials_within_band").get<long long>();
        }
        report.lags.push_back(stat);
    }
    return report;
}

void write_homometry_report_json(const std::filesystem::path& path,
                                 const HomometryReport& report) {
    json doc;
    doc["schema"] = 1;
    doc["max_order"] = report.max_order;
    doc["lag_bound"] = report.lag_bound;
    json orders = json::array();
    for (std::size_t i = 0; i < report.orders_checked.size(); ++i)
        orders.push_back({{"order", report.orders_checked[i]},
                          {"equal", static_cast<bool>(report.order_equal[i])}});
    doc["orders"] = orders;
    if (report.witness_lags) {
        doc["witness"] = {{"order", report.witness_order},
                          {"lags", *report.witness_lags},
                          {"value_a", report.witness_a.re.to_string()},
                          {"value_b", report.witness_b.re.to_string()}};
    }
    atomic_write(path, doc.dump(2) + "\n");
}

HomometryReport read_homometry_report_json(const std::filesystem::path& path) {
    json doc = json::parse(read_file(path));
    HomometryReport report;
    report.max_order = doc.at("max_order").get<int>();
    report.lag_bound = doc.at("lag_bound").get<long long>();
    for (const auto& entry : doc.at("orders")) {
        report.orders_checked.push_back(entry.at("order").get<int>());
        report.order_equal.push_back(entry.at("equal").get<bool>());
    }
    if (doc.contains("witness")) {
        const auto& w = doc.at("witness");
        report.witness_order = w.at("order").get<int>();
        report.witness_lags = w.at("lags").get<std::vector<long long>>();
        report.witness_a = RatComplex(Rational::parse(w.at("value_a").get<std::string>()));
        report.witness_b = RatComplex(Rational::parse(w.at("value_b").get<std::string>()));
    }
    return report;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    json doc;
    doc["schema"] = manifest.schema;
    doc["command"] = manifest.command;
    doc["parameters"] = manifest.parameters;
    if (manifest.seed) doc["seed"] = *manifest.seed;
    json outputs = json::array();
    for (const auto& output : manifest.outputs)
        outputs.push_back({{"path", output.path}, {"schema", output.schema}});
    doc["outputs"] = outputs;
    doc["library_version"] = manifest.library_version;
    doc["timings_ms"] = manifest.timings_ms;
    atomic_write(path, doc.dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& path) {
    json doc = json::parse(read_file(path));
    Manifest manifest;
    manifest.schema = doc.at("schema").get<int>();
    manifest.command = doc.at("command").get<std::string>();
    manifest.parameters =
        doc.at("parameters").get<std::map<std::string, std::string>>();
    if (doc.contains("seed")) manifest.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& output : doc.at("outputs"))
        manifest.outputs.push_back({output.at("path").get<std::string>(),
                                    output.at("schema").get<std::string>()});
    manifest.library_version = doc.at("library_version").get<std::string>();
    if (doc.contains("timings_ms"))
        manifest.timings_ms = doc.at("timings_ms").get<std::map<std::string, double>>();
    return manifest;
}

CompareReport compare_manifest_datasets(const std::filesystem::path& manifest_a,
                                        const std::filesystem::path& manifest_b) {
    Manifest a = read_manifest(manifest_a);
    Manifest b = read_manifest(manifest_b);
    if (a.outputs.size() != b.outputs.size())
        throw std::runtime_error("manifests list different numbers of outputs");
    CompareReport report;
    for (std::size_t i = 0; i < a.outputs.size(); ++i) {
        if (a.outputs[i].schema != b.outputs[i].schema)
            throw std::runtime_error("dataset schema mismatch: " +
                                     a.outputs[i].schema + " vs " +
                                     b.outputs[i].schema);
        std::filesystem::path pa = manifest_a.parent_path() / a.outputs[i].path;
        std::filesystem::path pb = manifest_b.parent_path() / b.outputs[i].path;
        if (a.outputs[i].schema.ends_with("_meta_json")) continue;  // run metadata
        if (a.outputs[i].schema.ends_with("json")) {
            // Result documents are compared textually.
            ColumnDeviation dev;
            dev.file_a = pa.string();
            dev.file_b = pb.string();
            dev.column = "(document)";
            dev.text_mismatch = read_file(pa) != read_file(pb);
            report.text_mismatch |= dev.text_mismatch;
            report.columns.push_back(dev);
            continue;
        }
        CsvTable ta = read_csv(pa);
        CsvTable tb = read_csv(pb);
        if (ta.header != tb.header)
            throw std::runtime_error("dataset schema mismatch: CSV headers differ");
        if (ta.rows.size() != tb.rows.size())
            throw std::runtime_error("datasets have different row counts");
        for (std::size_t col = 0; col < ta.header.size(); ++col) {
            ColumnDeviation dev;
            dev.file_a = pa.string();
            dev.file_b = pb.string();
            dev.column = ta.header[col];
            for (std::size_t row = 0; row < ta.rows.size(); ++row) {
                const std::string& va = ta.rows[row][col];
                const std::string& vb = tb.rows[row][col];
                if (va == vb) continue;
                try {
                    dev.max_abs_deviation =
                        std::max(dev.max_abs_deviation,
                                 std::abs(parse_double(va) - parse_double(vb)));
                } catch (const std::runtime_error&) {
                    dev.text_mismatch = true;
                }
            }
            report.max_abs_deviation =
                std::max(report.max_abs_deviation, dev.max_abs_deviation);
            report.text_mismatch |= dev.text_mismatch;
            report.columns.push_back(dev);
        }
    }
    return report;
}

}  // namespace diffract::io
