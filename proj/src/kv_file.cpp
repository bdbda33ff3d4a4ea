#include "comove/kv_file.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "comove/errors.hpp"

namespace comove {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void KvFile::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void KvFile::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    set(key, std::string(buf));
}

void KvFile::set(const std::string& key, long long value) {
    set(key, std::to_string(value));
}

void KvFile::comment(const std::string& text) { entries_.emplace_back("", text); }

bool KvFile::has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return true;
    return false;
}

std::optional<std::string> KvFile::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::string KvFile::get_or_throw(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw SchemaError("missing key '" + key + "'");
}

double KvFile::get_double(const std::string& key) const {
    const std::string s = get_or_throw(key);
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SchemaError("key '" + key + "' is not a finite number: '" + s + "'");
    }
}

long long KvFile::get_int(const std::string& key) const {
    const std::string s = get_or_throw(key);
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw SchemaError("key '" + key + "' is not an integer: '" + s + "'");
    return v;
}

void KvFile::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path.string());
    for (const auto& [k, v] : entries_) {
        if (k.empty())
            out << "# " << v << "\n";
        else
            out << k << " = " << v << "\n";
    }
}

KvFile KvFile::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());
    KvFile kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'name = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": empty key");
        kv.set(key, value);
    }
    return kv;
}

}  // namespace comove
