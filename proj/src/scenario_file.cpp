#include "nplab/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nplab::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void fail(int line_no, const std::string& key,
                       const std::string& what) {
    throw std::runtime_error("scenario line " + std::to_string(line_no) +
                             ", key '" + key + "': " + what);
}

double parse_double(const std::string& value, int line_no,
                    const std::string& key) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + value.size() || value.empty())
        fail(line_no, key, "expected a number, got '" + value + "'");
    return v;
}

long long parse_int(const std::string& value, int line_no,
                    const std::string& key) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end != begin + value.size() || value.empty())
        fail(line_no, key, "expected an integer, got '" + value + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& value, int line_no,
                         const std::string& key) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end != begin + value.size() || value.empty() || value[0] == '-')
        fail(line_no, key, "expected an unsigned integer, got '" + value + "'");
    return v;
}

}  // namespace

Mode parse_mode(const std::string& text) {
    const std::string m = lowercase(trim(text));
    if (m == "simulate") return Mode::simulate;
    if (m == "theory_closed") return Mode::theory_closed;
    if (m == "theory_ode") return Mode::theory_ode;
    throw std::runtime_error("unknown mode '" + text +
                             "' (expected simulate, theory_closed or theory_ode)");
}

Rule parse_rule(const std::string& text) {
    const std::string r = lowercase(trim(text));
    if (r == "snp") return Rule::snp;
    if (r == "dnp") return Rule::dnp;
    throw std::runtime_error("unknown rule '" + text + "' (expected snp or dnp)");
}

ScenarioConfig default_scenario() {
    ScenarioConfig sc;
    sc.model.n_inputs = 1000;
    sc.model.n_outputs = 1;
    sc.model.eta = 0.1;
    sc.model.sigma_xi_sq = 0.01;
    sc.model.sigma_zeta_sq = 0.01;
    sc.model.rule = Rule::dnp;
    sc.mode = Mode::simulate;
    sc.seed = 12345;
    sc.replications = 20;
    sc.t_max = 10.0;
    sc.record_interval = 0.25;
    return sc;
}

ScenarioConfig parse_scenario(std::istream& in) {
    ScenarioConfig sc = default_scenario();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                     ": expected 'key = value', got '" +
                                     stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "mode") {
            try {
                sc.mode = parse_mode(value);
            } catch (const std::exception& e) {
                fail(line_no, key, e.what());
            }
        } else if (key == "rule") {
            try {
                sc.model.rule = parse_rule(value);
            } catch (const std::exception& e) {
                fail(line_no, key, e.what());
            }
        } else if (key == "N") {
            sc.model.n_inputs = static_cast<int>(parse_int(value, line_no, key));
        } else if (key == "M") {
            sc.model.n_outputs = static_cast<int>(parse_int(value, line_no, key));
        } else if (key == "eta") {
            sc.model.eta = parse_double(value, line_no, key);
        } else if (key == "sigma_xi_sq") {
            sc.model.sigma_xi_sq = parse_double(value, line_no, key);
        } else if (key == "sigma_zeta_sq") {
            sc.model.sigma_zeta_sq = parse_double(value, line_no, key);
        } else if (key == "seed") {
            sc.seed = parse_uint(value, line_no, key);
        } else if (key == "replications") {
            sc.replications = static_cast<int>(parse_int(value, line_no, key));
        } else if (key == "t_max") {
            sc.t_max = parse_double(value, line_no, key);
        } else if (key == "record_interval") {
            sc.record_interval = parse_double(value, line_no, key);
        } else if (key == "q0") {
            sc.q0 = parse_double(value, line_no, key);
        } else if (key == "r0") {
            sc.r0 = parse_double(value, line_no, key);
        } else if (key == "q_kl0") {
            sc.q_kl0 = parse_double(value, line_no, key);
        } else if (key == "r_kl0") {
            sc.r_kl0 = parse_double(value, line_no, key);
        } else if (key == "t_kl") {
            sc.t_kl = parse_double(value, line_no, key);
        } else {
            fail(line_no, key, "unknown key");
        }
    }
    return sc;
}

ScenarioConfig read_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open scenario file: " + path);
    return parse_scenario(f);
}

}  // namespace nplab::io
