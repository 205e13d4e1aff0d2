// Run manifest: after an experiment finishes, every artifact in the output
// directory is listed in manifest.json with its SHA-256 digest, next to an echo of
// the resolved configuration. The manifest itself is the listing and is excluded
// from its own file table.
#ifndef FZK_MANIFEST_HPP
#define FZK_MANIFEST_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "fzk/csv.hpp"

namespace fzk {

inline constexpr const char* version_string = "1.0.0";

inline std::string sha256_hex(const void* data, std::size_t len) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (EVP_Digest(data, len, md, &md_len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * md_len);
    for (unsigned int i = 0; i < md_len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

inline std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes.data(), bytes.size());
}

// list every regular file under dir (except manifest.json itself), digest each,
// and write dir/manifest.json
inline nlohmann::json write_manifest(const std::filesystem::path& dir,
                                     const nlohmann::json& spec_echo,
                                     const nlohmann::json& summary = nlohmann::json::object()) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
            paths.push_back(std::filesystem::relative(entry.path(), dir));
    std::sort(paths.begin(), paths.end());

    nlohmann::json files = nlohmann::json::array();
    for (const auto& rel : paths) {
        nlohmann::json f;
        f["path"] = rel.generic_string();
        f["sha256"] = sha256_file(dir / rel);
        files.push_back(std::move(f));
    }

    nlohmann::json manifest;
    manifest["spec_echo"] = spec_echo;
    manifest["files"] = files;
    manifest["versions"] = {{"fzk", version_string}, {"field_container", "FZK1"}};
    if (!summary.empty()) manifest["summary"] = summary;

    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw IoError("cannot open " + (dir / "manifest.json").string());
    out << manifest.dump(2) << "\n";
    if (!out) throw IoError("short write to manifest.json");
    return manifest;
}

}  // namespace fzk

#endif
