/**
 * @file fixtures.cpp
 * @brief Access to embedded fixtures with checksum validation.
 */
#include "magicrect/fixtures.hpp"

#include <cstdio>
#include <map>

#include "magicrect/io.hpp"

namespace magicrect {

namespace detail {
const std::map<std::string, std::string>& embedded_fixtures();
}

namespace {

const char* kManifest = "MANIFEST.json";

std::string hex16(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const nlohmann::json& manifest() {
    static const nlohmann::json m = [] {
        auto& files = detail::embedded_fixtures();
        auto it = files.find(kManifest);
        if (it == files.end()) fail(ErrorCode::InvalidInput, "fixture manifest missing");
        return nlohmann::json::parse(it->second).at("files");
    }();
    return m;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (auto& [name, text] : detail::embedded_fixtures())
        if (name != kManifest) out.push_back(name.substr(0, name.size() - 5));
    return out;
}

const std::string& fixture_text(const std::string& name) {
    const std::string file = name + ".json";
    auto& files = detail::embedded_fixtures();
    auto it = files.find(file);
    if (it == files.end()) fail(ErrorCode::InvalidInput, "no fixture named " + name);
    if (!manifest().contains(file) || manifest()[file].get<std::string>() != hex16(fnv1a64(it->second)))
        fail(ErrorCode::InvalidInput, "checksum mismatch for fixture " + name);
    return it->second;
}

nlohmann::json fixture_json(const std::string& name) { return nlohmann::json::parse(fixture_text(name)); }

MRSInstance fixture_instance(const std::string& name) { return instance_from_json(fixture_json(name)); }

std::vector<std::string> fixture_checksum_failures() {
    std::vector<std::string> bad;
    for (auto& name : fixture_names()) {
        try {
            fixture_text(name);
        } catch (const MagicRectError&) {
            bad.push_back(name);
        }
    }
    for (auto& [file, sum] : manifest().items())
        if (!detail::embedded_fixtures().count(file)) bad.push_back(file);
    return bad;
}

}  // namespace magicrect
