#ifndef ILLPOSED_TOOLS_MANIFEST_HPP
#define ILLPOSED_TOOLS_MANIFEST_HPP

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

namespace illposed::tools {

inline constexpr const char* tool_version = "0.1.0";

inline std::string sha256_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "";
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

/// Record of one CLI run, written as JSON next to its outputs. Everything
/// except the "timing" block is a function of the configuration.
class RunManifest {
public:
    RunManifest(std::string command, nlohmann::json config)
        : command_(std::move(command)), config_(std::move(config)), start_(std::chrono::steady_clock::now()),
          started_(std::chrono::system_clock::now())
    {
    }

    void add_output(const std::string& path) { outputs_.push_back(path); }
    void set_status(std::string status, int exit_code)
    {
        status_ = std::move(status);
        exit_code_ = exit_code;
    }
    void add_note(const std::string& s) { notes_.push_back(s); }
    void set_result(const std::string& key, nlohmann::json v) { results_[key] = std::move(v); }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["tool"] = "illposed";
        j["version"] = tool_version;
        j["command"] = command_;
        j["config"] = config_;
        j["status"] = status_;
        j["exit_code"] = exit_code_;
        j["notes"] = notes_;
        j["results"] = results_.is_null() ? nlohmann::json::object() : results_;
        nlohmann::json outs = nlohmann::json::array();
        for (const auto& p : outputs_) {
            std::error_code ec;
            const auto size = std::filesystem::file_size(p, ec);
            outs.push_back({{"path", std::filesystem::path(p).filename().string()},
                            {"bytes", ec ? 0 : static_cast<std::uint64_t>(size)},
                            {"sha256", sha256_file(p)}});
        }
        j["outputs"] = outs;
        const auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const std::time_t t = std::chrono::system_clock::to_time_t(started_);
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::ostringstream ts;
        ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
        j["timing"] = {{"started_utc", ts.str()}, {"wall_seconds", wall}};
        return j;
    }

    /// Writes <dir>/<stem>.manifest.json and returns its path.
    std::string write(const std::string& dir, const std::string& stem) const
    {
        const auto path = (std::filesystem::path(dir) / (stem + ".manifest.json")).string();
        std::ofstream out(path);
        out << to_json().dump(2) << '\n';
        return path;
    }

private:
    std::string command_;
    nlohmann::json config_;
    std::chrono::steady_clock::time_point start_;
    std::chrono::system_clock::time_point started_;
    std::vector<std::string> outputs_;
    std::vector<std::string> notes_;
    nlohmann::json results_;
    std::string status_ = "ok";
    int exit_code_ = 0;
};

} // namespace illposed::tools

#endif // ILLPOSED_TOOLS_MANIFEST_HPP
