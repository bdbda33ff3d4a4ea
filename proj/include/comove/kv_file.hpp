#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace comove {

// Flat "name = value" text format shared by fit reports, fit configs and
// simulation specs. '#' starts a comment; blank lines are ignored; order is
// preserved on write so reruns are byte-identical.
class KvFile {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);  // %.17g, round-trips exactly
    void set(const std::string& key, long long value);
    void comment(const std::string& text);  // emitted as a '# ...' line in place

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or_throw(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;

    void write(const std::filesystem::path& path) const;
    static KvFile read(const std::filesystem::path& path);

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    // Comment lines are stored with an empty key.
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace comove
