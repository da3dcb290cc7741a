#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "sts.hpp"

namespace chaoscrypt::sts {

std::string format_p(double p) {
    if (std::isnan(p)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string verdict_word(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::NotApplicable: return "N/A";
    }
    return "?";
}

}  // namespace

std::string format_text(const SuiteReport& report) {
    const std::string column = report.label.empty() ? std::string("p-value") : report.label;
    const std::size_t width = std::max<std::size_t>(column.size(), 10) + 2;
    std::ostringstream out;
    out << "Statistical test report\n";
    out << "generator: " << (report.label.empty() ? "-" : report.label) << '\n';
    out << "bits: " << report.length << '\n';
    out << "alpha: " << report.alpha << "\n\n";
    out << pad("S", 4) << pad("Test", 28) << pad(column, width) << "Verdict\n";
    for (std::size_t i = 0; i < report.tests.size(); ++i) {
        const TestResult& t = report.tests[i];
        const std::string p = t.verdict() == Verdict::NotApplicable ? "n/a" : format_p(t.summary_p());
        out << pad(std::to_string(i + 1), 4) << pad(t.title, 28) << pad(p, width) << verdict_word(t.verdict())
            << '\n';
    }
    out << "\npassed " << report.pass_count() << " of " << report.applicable_count() << " applicable tests ("
        << report.tests.size() << " run)\n";

    out << "\nDetail\n";
    for (const TestResult& t : report.tests) {
        out << t.name;
        for (const auto& [key, value] : t.parameters) out << ' ' << key << '=' << value;
        out << '\n';
        if (!t.applicable) {
            out << "  not applicable: " << t.note << '\n';
            continue;
        }
        for (std::size_t i = 0; i < t.p_values.size(); ++i) {
            out << "  " << pad(t.p_labels[i], 10) << format_p(t.p_values[i]) << (t.passed(i) ? "" : "  *") << '\n';
        }
    }
    return out.str();
}

std::string format_json(const SuiteReport& report) {
    nlohmann::ordered_json doc;
    doc["label"] = report.label;
    doc["bits"] = report.length;
    doc["alpha"] = report.alpha;
    doc["pass_count"] = report.pass_count();
    doc["applicable_count"] = report.applicable_count();
    doc["tests"] = nlohmann::ordered_json::array();
    for (const TestResult& t : report.tests) {
        nlohmann::ordered_json rec;
        rec["name"] = t.name;
        rec["title"] = t.title;
        rec["parameters"] = nlohmann::ordered_json::object();
        for (const auto& [key, value] : t.parameters) rec["parameters"][key] = value;
        rec["p_labels"] = t.p_labels;
        rec["p_values"] = t.p_values;
        rec["verdict"] = to_string(t.verdict());
        if (!t.applicable) rec["note"] = t.note;
        rec["detail"] = nlohmann::ordered_json::object();
        for (const auto& [key, value] : t.detail) rec["detail"][key] = value;
        doc["tests"].push_back(std::move(rec));
    }
    return doc.dump(2) + "\n";
}

}  // namespace chaoscrypt::sts
