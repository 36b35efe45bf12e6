#include "asrr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "asrr/error.hpp"

namespace asrr::io {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double prefix_factor(std::string_view p) {
    if (p == "f") return 1e-15;
    if (p == "p") return 1e-12;
    if (p == "n") return 1e-9;
    if (p == "u" || p == "\xC2\xB5" || p == "\xCE\xBC") return 1e-6;
    if (p == "m") return 1e-3;
    if (p == "k") return 1e3;
    if (p == "M") return 1e6;
    if (p == "G") return 1e9;
    if (p == "T") return 1e12;
    return 0.0;
}

bool is_base_unit(std::string_view u) {
    static constexpr std::string_view bases[] = {
        "H", "F", "Hz", "Ohm", "ohm", "\xCE\xA9", "W", "V", "S", "s", "m", "A", "K", "rad",
        "V^2", "V2", "A/V^2", "A/V2", "F/m^2", "F/m2", "V^2m^2", "V2m2",
    };
    return std::find(std::begin(bases), std::end(bases), u) != std::end(bases);
}

double unit_factor(std::string_view unit) {
    if (unit.empty() || is_base_unit(unit)) return 1.0;
    // Multi-byte micro signs are two bytes long.
    for (std::size_t len : {std::size_t{2}, std::size_t{1}}) {
        if (unit.size() > len && is_base_unit(unit.substr(len))) {
            const double f = prefix_factor(unit.substr(0, len));
            if (f != 0.0) return f;
        }
    }
    throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

}  // namespace

double parse_quantity(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty quantity");
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || !std::isfinite(value)) {
        throw ConfigError("malformed number in '" + s + "'");
    }
    const std::string unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
    if (unit == "dBm") return 1e-3 * std::pow(10.0, value / 10.0);
    return value * unit_factor(unit);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string Config::normalize(std::string key) {
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return c == '-' ? '_' : std::tolower(c); });
    return key;
}

void Config::fail(const std::string& key, const std::string& why) const {
    throw ConfigError(source_ + ": key '" + key + "': " + why);
}

Config Config::parse(std::string_view text, const std::string& source) {
    Config cfg;
    cfg.source_ = source;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = normalize(trim(body.substr(0, eq)));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
        if (!cfg.values_.emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path.string());
}

bool Config::has(const std::string& key) const { return values_.count(normalize(key)) > 0; }

std::string Config::text(const std::string& key) const {
    const auto it = values_.find(normalize(key));
    if (it == values_.end()) fail(key, "missing");
    return it->second;
}

double Config::number(const std::string& key) const {
    const std::string value = text(key);
    try {
        return parse_quantity(value);
    } catch (const ConfigError& e) {
        fail(key, e.what());
    }
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::optional<double> Config::maybe(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
}

int Config::integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(key, "expected an integer");
    return static_cast<int>(v);
}

std::vector<std::string> Config::keys() const {
    std::vector<std::string> out;
    for (const auto& kv : values_) out.push_back(kv.first);
    return out;
}

void Config::set(const std::string& key, const std::string& value) { values_[normalize(key)] = value; }

std::vector<double> FrequencyGrid::omegas() const {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double f =
            points == 1 ? start_hz : start_hz + spacing_hz() * static_cast<double>(i);
        out[i] = hz_to_rad(f);
    }
    return out;
}

double FrequencyGrid::spacing_hz() const {
    return points > 1 ? (stop_hz - start_hz) / static_cast<double>(points - 1) : 0.0;
}

FrequencyGrid parse_grid(std::string_view spec) {
    const std::string s(spec);
    const auto a = s.find(':');
    const auto b = a == std::string::npos ? a : s.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("grid must be START:STOP:N, got '" + s + "'");
    FrequencyGrid g;
    g.start_hz = parse_quantity(s.substr(0, a));
    g.stop_hz = parse_quantity(s.substr(a + 1, b - a - 1));
    const double n = parse_quantity(s.substr(b + 1));
    if (n < 2 || n != std::floor(n)) throw ConfigError("grid point count must be an integer >= 2");
    g.points = static_cast<std::size_t>(n);
    if (!(g.start_hz > 0.0 && g.stop_hz > g.start_hz)) {
        throw ConfigError("grid requires 0 < START < STOP");
    }
    return g;
}

FrequencyGrid auto_grid(double f0_hz, double q_on, double span_bandwidths) {
    require(f0_hz > 0.0 && q_on > 0.0 && span_bandwidths > 0.0, "auto_grid needs f0, Q, span > 0");
    const double half_span = std::min(span_bandwidths * f0_hz / q_on, 0.9 * f0_hz);
    const double max_step = f0_hz / (100.0 * q_on);
    const auto half = static_cast<std::size_t>(std::ceil(half_span / max_step - 1e-9));
    return {f0_hz - half_span, f0_hz + half_span, 2 * std::max<std::size_t>(half, 1) + 1};
}

void write_sweep_csv(std::ostream& os, const TwoPortSweep& sweep) {
    os << "freq_hz,re_s11,im_s11,re_s21,im_s21,mag_s21_db,phase_s21_deg\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const cplx s11 = sweep.s11[i];
        const cplx s21 = sweep.s21[i];
        os << format_number(rad_to_hz(sweep.freqs[i])) << ',' << format_number(s11.real()) << ','
           << format_number(s11.imag()) << ',' << format_number(s21.real()) << ','
           << format_number(s21.imag()) << ',' << format_number(db20(std::abs(s21))) << ','
           << format_number(std::arg(s21) * 180.0 / kPi) << '\n';
    }
}

void write_touchstone(std::ostream& os, const TwoPortSweep& sweep) {
    os << "! 2-port S-parameters, SRR-loaded line\n";
    os << "# Hz S RI R " << format_number(sweep.z0_ref) << '\n';
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const cplx s11 = sweep.s11[i];
        const cplx s21 = sweep.s21[i];
        os << format_number(rad_to_hz(sweep.freqs[i]));
        for (const cplx v : {s11, s21, s21, s11}) {
            os << ' ' << format_number(v.real()) << ' ' << format_number(v.imag());
        }
        os << '\n';
    }
}

void write_noise_csv(std::ostream& os, const std::vector<NoiseRow>& rows) {
    os << "offset_hz,contributor,ssb_dbch\n";
    for (const auto& r : rows) {
        os << format_number(r.offset_hz) << ',' << to_string(r.contributor) << ','
           << format_number(r.ssb_dbch) << '\n';
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw ConfigError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("cannot replace " + path.string() + ": " + ec.message());
    }
}

}  // namespace asrr::io
