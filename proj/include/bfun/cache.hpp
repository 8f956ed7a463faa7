#pragma once

// Content-addressed disk cache for expensive symbolic results.
//
// The key is a 64-bit FNV-1a hash of (operation name, parameters, version
// tag).  Each entry is a text file whose last line is a hash trailer over
// the payload, so corruption is detected and treated as a miss.  An
// unwritable directory disables the cache with a single warning instead of
// failing the computation.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bfun/version.hpp"

namespace bfun {

inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

// stable key for (operation, parameters); the version tag is mixed in so a
// format or algorithm change invalidates old entries
inline std::string cache_key(const std::string& operation, const std::string& params) {
    std::string material = operation + "\x1f" + params + "\x1f" + kVersionTag;
    return hex64(fnv1a64(material));
}

class Cache {
public:
    Cache() = default;

    // empty dir disables the cache silently (not configured)
    explicit Cache(const std::string& dir) : dir_(dir) {
        if (dir_.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::string probe = dir_ + "/.bfun_probe";
        std::ofstream test(probe);
        if (!ec && test) {
            test.close();
            std::filesystem::remove(probe, ec);
            enabled_ = true;
        } else {
            std::cerr << "warning: cache directory '" << dir_
                      << "' is not writable; cache disabled\n";
        }
    }

    // default directory from the environment
    static Cache from_env(const std::string& override_dir = "") {
        if (!override_dir.empty()) return Cache(override_dir);
        const char* env = std::getenv("BFUN_CACHE");
        return Cache(env ? std::string(env) : std::string());
    }

    bool enabled() const { return enabled_; }

    std::optional<std::string> get(const std::string& key) const {
        if (!enabled_) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string all = buf.str();
        // split off the trailer line "#hash <hex>"
        auto pos = all.rfind("#hash ");
        if (pos == std::string::npos || (pos != 0 && all[pos - 1] != '\n'))
            return std::nullopt;
        std::string payload = all.substr(0, pos);
        std::string trailer = all.substr(pos + 6);
        while (!trailer.empty() && (trailer.back() == '\n' || trailer.back() == '\r'))
            trailer.pop_back();
        if (trailer != hex64(fnv1a64(payload))) return std::nullopt;  // corrupted -> miss
        return payload;
    }

    bool put(const std::string& key, const std::string& payload) const {
        if (!enabled_) return false;
        std::string tmp = path_for(key) + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return false;
            out << payload << "#hash " << hex64(fnv1a64(payload)) << "\n";
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path_for(key), ec);
        return !ec;
    }

private:
    std::string path_for(const std::string& key) const { return dir_ + "/" + key + ".bfun"; }

    std::string dir_;
    bool enabled_ = false;
};

}  // namespace bfun
