// Run configuration: one `key = value` pair per line, '#' starts a comment,
// blank lines ignored. Values are scalars or comma-separated lists. Every key a
// runner reads is recorded together with the resolved value (explicit or default),
// so the harness can echo the effective configuration and reject unknown keys.
#ifndef FZK_CONFIG_HPP
#define FZK_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fzk/csv.hpp"

namespace fzk {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

class Config {
public:
    Config() = default;

    static Config parse(std::istream& in) {
        Config cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = detail::trim(line.substr(0, eq));
            std::string val = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            if (cfg.kv_.count(key))
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
            cfg.kv_[key] = val;
        }
        return cfg;
    }

    static Config parse_text(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config file " + path);
        return parse(in);
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    void set(const std::string& key, const std::string& val) { kv_[key] = val; }

    std::string get_string(const std::string& key, const std::string& def) const {
        auto it = kv_.find(key);
        std::string v = it == kv_.end() ? def : it->second;
        touch(key, v);
        return v;
    }

    std::string require_string(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing required config key '" + key + "'");
        touch(key, it->second);
        return it->second;
    }

    double get_double(const std::string& key, double def) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            touch(key, csv_cell(def));
            return def;
        }
        double v = parse_double(key, it->second);
        touch(key, it->second);
        return v;
    }

    long get_long(const std::string& key, long def) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            touch(key, std::to_string(def));
            return def;
        }
        long v = parse_long(key, it->second);
        touch(key, it->second);
        return v;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t def) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            touch(key, std::to_string(def));
            return def;
        }
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            touch(key, it->second);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': not an unsigned integer: " +
                              it->second);
        }
    }

    bool get_bool(const std::string& key, bool def) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            touch(key, def ? "true" : "false");
            return def;
        }
        const std::string& s = it->second;
        touch(key, s);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ConfigError("config key '" + key + "': not a boolean: " + s);
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::string& def) const {
        std::string raw = get_string(key, def);
        std::vector<double> out;
        for (const std::string& tok : split(raw)) out.push_back(parse_double(key, tok));
        if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
        return out;
    }

    std::vector<long> get_long_list(const std::string& key, const std::string& def) const {
        std::string raw = get_string(key, def);
        std::vector<long> out;
        for (const std::string& tok : split(raw)) out.push_back(parse_long(key, tok));
        if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
        return out;
    }

    // keys present in the file but never consumed by the runner: schema violations
    void check_consumed() const {
        for (const auto& [k, v] : kv_)
            if (!touched_.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }

    // every key the runner looked at, with the value actually used
    const std::map<std::string, std::string>& resolved() const { return resolved_; }

    // record an externally resolved value (CLI override) in the echo
    void note(const std::string& key, const std::string& val) const { touch(key, val); }

private:
    static std::vector<std::string> split(const std::string& raw) {
        std::vector<std::string> toks;
        std::string cur;
        std::istringstream in(raw);
        while (std::getline(in, cur, ',')) {
            cur = detail::trim(cur);
            if (!cur.empty()) toks.push_back(cur);
        }
        return toks;
    }

    static double parse_double(const std::string& key, const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': not a number: " + s);
        }
    }

    static long parse_long(const std::string& key, const std::string& s) {
        try {
            std::size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': not an integer: " + s);
        }
    }

    void touch(const std::string& key, const std::string& val) const {
        touched_.insert(key);
        resolved_[key] = val;
    }

    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> touched_;
    mutable std::map<std::string, std::string> resolved_;
};

}  // namespace fzk

#endif
