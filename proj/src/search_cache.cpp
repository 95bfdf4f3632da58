#include "primorial/search_cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdlib>
#include <json.hpp>

#include "primorial/errors.hpp"

namespace primlab {

std::string_view to_string(Form f) noexcept
{
    return f == Form::minus ? "minus" : "plus";
}

std::optional<Form> parse_form(std::string_view s) noexcept
{
    if (s == "minus")
        return Form::minus;
    if (s == "plus")
        return Form::plus;
    return std::nullopt;
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::string>& flag)
{
    if (flag && !flag->empty())
        return std::filesystem::path(*flag);
    if (const char* env = std::getenv(kCacheEnvVar); env && *env)
        return std::filesystem::path(env);
    return std::nullopt;
}

std::string SearchCache::serialize(const SearchRecord& rec)
{
    nlohmann::ordered_json j;
    j["n"] = rec.n;
    j["form"] = to_string(rec.form);
    j["classification"] = to_string(rec.classification);
    j["method"] = rec.method;
    j["elapsed_ms"] = rec.elapsed_ms;
    j["digest"] = rec.digest;
    return j.dump();
}

SearchRecord SearchCache::parse(std::string_view line, const std::string& where)
{
    auto fail = [&where](const std::string& why) -> IntegrityError {
        return IntegrityError("cache " + where + ": " + why);
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw fail(std::string("malformed JSON (") + e.what() + ")");
    }
    if (!j.is_object())
        throw fail("record is not an object");
    for (const char* field : {"n", "form", "classification", "method", "elapsed_ms", "digest"})
        if (!j.contains(field))
            throw fail(std::string("missing field '") + field + "'");
    SearchRecord rec;
    if (!j["n"].is_number_unsigned() || j["n"].get<std::uint64_t>() == 0)
        throw fail("n must be a positive integer");
    rec.n = j["n"].get<std::size_t>();
    const auto form = j["form"].is_string() ? parse_form(j["form"].get<std::string>()) : std::nullopt;
    if (!form)
        throw fail("form must be 'minus' or 'plus'");
    rec.form = *form;
    const auto cls = j["classification"].is_string()
                         ? parse_classification(j["classification"].get<std::string>())
                         : std::nullopt;
    if (!cls)
        throw fail("unknown classification");
    rec.classification = *cls;
    if (!j["method"].is_string())
        throw fail("method must be text");
    rec.method = j["method"].get<std::string>();
    if (!j["elapsed_ms"].is_number_unsigned())
        throw fail("elapsed_ms must be a natural number");
    rec.elapsed_ms = j["elapsed_ms"].get<std::uint64_t>();
    if (!j["digest"].is_string())
        throw fail("digest must be text");
    rec.digest = j["digest"].get<std::string>();
    if (rec.digest.size() != 64 || rec.digest.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw fail("digest is not a hex SHA-256");
    return rec;
}

bool SearchCache::same(const SearchRecord& a, const SearchRecord& b)
{
    return a.n == b.n && a.form == b.form && a.classification == b.classification && a.method == b.method
           && a.digest == b.digest;
}

SearchCache::SearchCache(std::filesystem::path path) : path_(std::move(path))
{
    std::ifstream in(*path_);
    if (in) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            const std::string where = path_->string() + ":" + std::to_string(lineno);
            auto rec = parse(line, where);
            auto [it, inserted] = records_.emplace(key(rec.n, rec.form), rec);
            if (!inserted && !same(it->second, rec))
                throw IntegrityError("cache " + where + ": conflicting duplicate for n=" + std::to_string(rec.n)
                                     + " " + std::string(to_string(rec.form)));
        }
    }
}

std::optional<SearchRecord> SearchCache::lookup(std::size_t n, Form form, std::string_view digest) const
{
    std::lock_guard lock(mu_);
    const auto it = records_.find(key(n, form));
    if (it == records_.end())
        return std::nullopt;
    if (it->second.digest != digest)
        throw IntegrityError("cache digest mismatch for n=" + std::to_string(n) + " "
                             + std::string(to_string(form)) + ": stored record belongs to a different value");
    return it->second;
}

void SearchCache::store(const SearchRecord& rec)
{
    std::lock_guard lock(mu_);
    auto [it, inserted] = records_.emplace(key(rec.n, rec.form), rec);
    if (!inserted) {
        if (!same(it->second, rec))
            throw IntegrityError("conflicting result for n=" + std::to_string(rec.n) + " "
                                 + std::string(to_string(rec.form)));
        return;
    }
    if (!path_)
        return;
    if (!out_.is_open()) {
        if (path_->has_parent_path())
            std::filesystem::create_directories(path_->parent_path());
        out_.open(*path_, std::ios::app);
        if (!out_)
            throw ResourceError("cannot open cache file " + path_->string() + " for append");
    }
    out_ << serialize(rec) << '\n';
    out_.flush();
    if (!out_)
        throw ResourceError("write to cache file " + path_->string() + " failed");
}

std::vector<SearchRecord> SearchCache::records() const
{
    std::lock_guard lock(mu_);
    std::vector<SearchRecord> out;
    out.reserve(records_.size());
    for (const auto& [k, v] : records_)
        out.push_back(v);
    return out;
}

std::size_t SearchCache::size() const
{
    std::lock_guard lock(mu_);
    return records_.size();
}

}  // namespace primlab
