#include "cauchy_gof/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cauchy_gof/errors.hpp"

namespace cauchy_gof {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"'");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"'");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = line.find(delim);
        out.push_back(trim(line.substr(0, pos)));
        if (pos == std::string_view::npos) {
            return out;
        }
        line = line.substr(pos + 1);
    }
}

char detect_delimiter(std::string_view line) {
    for (char c : {',', ';', '\t'}) {
        if (line.find(c) != std::string_view::npos) {
            return c;
        }
    }
    return ',';
}

std::optional<double> parse_number(std::string_view field) {
    if (field.empty()) {
        return std::nullopt;
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::ordered_json encode_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

double decode_number(const nlohmann::ordered_json& j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ValidationError("report: expected a number");
}

}  // namespace

Sample parse_input_text(std::string_view text, const InputOptions& options) {
    std::vector<std::pair<std::size_t, std::string_view>> rows;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        ++lineno;
        if (!trim(line).empty()) {
            rows.emplace_back(lineno, line);
        }
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    if (rows.empty()) {
        throw ValidationError("input is empty");
    }

    const char delim = detect_delimiter(rows.front().second);
    std::size_t col = 0;
    std::size_t first_data = 0;
    if (options.has_header) {
        const auto header = split(rows.front().second, delim);
        first_data = 1;
        const auto it = std::find(header.begin(), header.end(), options.column);
        if (it != header.end()) {
            col = static_cast<std::size_t>(it - header.begin());
        } else if (auto idx = parse_number(options.column); idx && *idx >= 0 &&
                                                           *idx == std::floor(*idx)) {
            col = static_cast<std::size_t>(*idx);
        } else {
            throw ValidationError("column '" + options.column + "' not found in header");
        }
    } else {
        const auto idx = parse_number(options.column);
        if (!idx || *idx < 0 || *idx != std::floor(*idx)) {
            throw ValidationError("column '" + options.column +
                                  "' must be a 0-based index when the input has no header");
        }
        col = static_cast<std::size_t>(*idx);
    }

    std::vector<double> values;
    std::vector<std::size_t> bad;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto fields = split(rows[r].second, delim);
        std::optional<double> v;
        if (col < fields.size()) {
            v = parse_number(fields[col]);
        }
        if (v) {
            values.push_back(*v);
        } else {
            bad.push_back(rows[r].first);
        }
    }
    if (!bad.empty()) {
        std::string msg = "non-numeric value in column " + options.column + " on line";
        msg += bad.size() > 1 ? "s " : " ";
        for (std::size_t i = 0; i < bad.size() && i < 10; ++i) {
            msg += (i ? ", " : "") + std::to_string(bad[i]);
        }
        if (bad.size() > 10) {
            msg += ", ... (" + std::to_string(bad.size()) + " total)";
        }
        throw ValidationError(msg);
    }
    if (values.empty()) {
        throw ValidationError("input has no data rows");
    }
    if (options.kind == InputKind::prices) {
        return compute_returns(values);
    }
    return Sample(std::move(values));
}

Sample parse_input(const std::filesystem::path& path, const InputOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input_text(buf.str(), options);
}

nlohmann::ordered_json report_to_json(const ReportDocument& doc) {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", "cauchy-gof"}, {"version", doc.tool_version}};
    nlohmann::ordered_json ds;
    ds["path"] = doc.path;
    ds["n"] = doc.n;
    ds["preprocessing"] = doc.preprocessing;
    ds["location"] = doc.location ? encode_number(*doc.location) : nlohmann::ordered_json();
    ds["scale"] = doc.scale ? encode_number(*doc.scale) : nlohmann::ordered_json();
    j["dataset"] = std::move(ds);
    j["config"] = {{"mode", doc.mode},
                   {"alpha", doc.alpha},
                   {"seed", doc.seed},
                   {"B", doc.B},
                   {"mc_pvalues", doc.mc_pvalues}};
    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (const auto& o : doc.outcomes) {
        nlohmann::ordered_json t;
        t["test_id"] = o.test_id;
        t["statistic"] = encode_number(o.statistic);
        t["p_value"] = encode_number(o.p_value);
        t["p_method"] = std::string(p_method_name(o.p_method));
        t["alpha"] = o.alpha;
        t["reject"] = o.reject;
        t["warnings"] = o.warnings;
        t["n"] = o.n;
        outcomes.push_back(std::move(t));
    }
    j["outcomes"] = std::move(outcomes);
    return j;
}

ReportDocument report_from_json(const nlohmann::ordered_json& j) {
    try {
        ReportDocument doc;
        doc.tool_version = j.at("tool").at("version").get<std::string>();
        const auto& ds = j.at("dataset");
        doc.path = ds.at("path").get<std::string>();
        doc.n = ds.at("n").get<std::size_t>();
        doc.preprocessing = ds.at("preprocessing").get<std::string>();
        if (!ds.at("location").is_null()) doc.location = decode_number(ds.at("location"));
        if (!ds.at("scale").is_null()) doc.scale = decode_number(ds.at("scale"));
        const auto& cfg = j.at("config");
        doc.mode = cfg.at("mode").get<std::string>();
        doc.alpha = cfg.at("alpha").get<double>();
        doc.seed = cfg.at("seed").get<std::uint64_t>();
        doc.B = cfg.at("B").get<std::size_t>();
        doc.mc_pvalues = cfg.at("mc_pvalues").get<bool>();
        for (const auto& t : j.at("outcomes")) {
            TestOutcome o;
            o.test_id = t.at("test_id").get<std::string>();
            o.statistic = decode_number(t.at("statistic"));
            o.p_value = decode_number(t.at("p_value"));
            const auto method = t.at("p_method").get<std::string>();
            if (method == "chisq1") {
                o.p_method = PMethod::chisq1;
            } else if (method == "monte_carlo") {
                o.p_method = PMethod::monte_carlo;
            } else {
                throw ValidationError("report: unknown p_method '" + method + "'");
            }
            o.alpha = t.at("alpha").get<double>();
            o.reject = t.at("reject").get<bool>();
            o.warnings = t.at("warnings").get<std::vector<std::string>>();
            o.n = t.at("n").get<std::size_t>();
            doc.outcomes.push_back(std::move(o));
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("report: ") + e.what());
    }
}

std::string format_report(const ReportDocument& doc) {
    std::ostringstream out;
    out << "dataset: " << doc.path << " (n=" << doc.n << ", " << doc.preprocessing;
    if (doc.location && doc.scale) {
        out << ", location=" << format_double(*doc.location)
            << ", scale=" << format_double(*doc.scale);
    }
    out << ")\n";
    out << "mode=" << doc.mode << " alpha=" << doc.alpha << " seed=" << doc.seed
        << " B=" << doc.B << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %14s %10s %-12s %s\n", "test", "statistic", "p-value",
                  "method", "decision");
    out << line;
    for (const auto& o : doc.outcomes) {
        const char* decision = std::isnan(o.p_value) ? "n/a" : (o.reject ? "reject" : "accept");
        std::snprintf(line, sizeof line, "%-6s %14.6g %10.4f %-12s %s\n", o.test_id.c_str(),
                      o.statistic, o.p_value, std::string(p_method_name(o.p_method)).c_str(),
                      decision);
        out << line;
        for (const auto& w : o.warnings) {
            out << "       warning: " << w << '\n';
        }
    }
    return out.str();
}

std::vector<QQPoint> qq_points(const Sample& s) {
    const std::vector<double> x = s.sorted();
    const auto n = static_cast<double>(x.size());
    std::vector<QQPoint> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.push_back({cauchy_quantile((static_cast<double>(i) + 0.5) / n), x[i]});
    }
    return out;
}

std::vector<HistogramBin> histogram(const Sample& s, std::size_t bins) {
    if (bins == 0) {
        throw ValidationError("histogram needs at least one bin");
    }
    const auto [lo_it, hi_it] = std::minmax_element(s.values().begin(), s.values().end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].left = lo + width * static_cast<double>(b);
        out[b].right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
        out[b].count = 0;
    }
    for (double x : s.values()) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        b = std::min(b, bins - 1);
        ++out[b].count;
    }
    const auto n = static_cast<double>(s.size());
    for (auto& bin : out) {
        bin.density = static_cast<double>(bin.count) / (n * (bin.right - bin.left));
        bin.cauchy_pdf = cauchy_pdf(0.5 * (bin.left + bin.right));
    }
    return out;
}

std::string qq_to_csv(const std::vector<QQPoint>& points) {
    std::string out = "theoretical,empirical\n";
    for (const auto& p : points) {
        out += format_double(p.theoretical) + ',' + format_double(p.empirical) + '\n';
    }
    return out;
}

std::string histogram_to_csv(const std::vector<HistogramBin>& bins) {
    std::string out = "left,right,count,density,cauchy_pdf\n";
    for (const auto& b : bins) {
        out += format_double(b.left) + ',' + format_double(b.right) + ',' +
               std::to_string(b.count) + ',' + format_double(b.density) + ',' +
               format_double(b.cauchy_pdf) + '\n';
    }
    return out;
}

}  // namespace cauchy_gof
