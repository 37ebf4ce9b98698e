#include "aitlab/table_cache.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace aitlab {

namespace {

constexpr char kMagic[] = "AITLTBL1";
constexpr std::size_t kHeader = 24;

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(const std::string& in, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(in[at + i]);
    return v;
}

void put_gamma(BitString& out, std::uint64_t v) { out.append(gamma_encode(v + 1)); }

std::uint64_t take_gamma(BitReader& r) {
    auto v = r.read_gamma_u64();
    if (!v || *v == 0) throw CacheError("truncated integer field");
    return *v - 1;
}

BitString take_string(BitReader& r) {
    auto s = r.read_string();
    if (!s) throw CacheError("truncated string field");
    return *s;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::string cache_file_name(MachineKind kind, const BitString& aux, const Budget& budget) {
    std::ostringstream key;
    key << machine_version << '|' << to_string(kind) << '|' << aux.str() << '|' << budget.max_len << '|'
        << budget.max_steps;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(key.str())));
    return std::string(to_string(kind)) + "-" + std::to_string(budget.max_len) + "-" +
           std::to_string(budget.max_steps) + "-" + hex + ".tbl";
}

std::string encode_table(const ComplexityTable& t) {
    BitString p;
    p.append(encode_string(ascii_bits(machine_version)));
    put_gamma(p, t.kind == MachineKind::plain ? 0 : 1);
    p.append(encode_string(t.aux));
    put_gamma(p, t.budget.max_len);
    put_gamma(p, t.budget.max_steps);
    put_gamma(p, t.entries.size());
    for (const auto& [out, e] : t.entries) {
        p.append(encode_string(out));
        put_gamma(p, e.min_len);
        put_gamma(p, e.min_steps_any);
        p.append(encode_string(e.witness));
        put_gamma(p, e.min_steps_at_min_len);
    }
    std::string payload((p.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i]) payload[i / 8] = static_cast<char>(payload[i / 8] | (0x80 >> (i % 8)));
    std::string out(kMagic, 8);
    put_u64(out, p.size());
    put_u64(out, fnv1a64(payload));
    return out + payload;
}

ComplexityTable decode_table(const std::string& bytes) {
    if (bytes.size() < kHeader || bytes.compare(0, 8, kMagic) != 0) throw CacheError("bad magic");
    const std::uint64_t nbits = get_u64(bytes, 8);
    const std::string payload = bytes.substr(kHeader);
    if ((nbits + 7) / 8 != payload.size()) throw CacheError("length mismatch");
    if (fnv1a64(payload) != get_u64(bytes, 16)) throw CacheError("checksum mismatch");
    BitString p;
    p.reserve(nbits);
    for (std::uint64_t i = 0; i < nbits; ++i) p.push_back((static_cast<unsigned char>(payload[i / 8]) >> (7 - i % 8)) & 1U);
    BitReader r(p);
    if (bits_ascii(take_string(r)) != machine_version) throw CacheError("machine version mismatch");
    ComplexityTable t;
    const std::uint64_t kind = take_gamma(r);
    if (kind > 1) throw CacheError("bad machine kind");
    t.kind = kind == 0 ? MachineKind::plain : MachineKind::prefix;
    t.aux = take_string(r);
    t.budget.max_len = take_gamma(r);
    t.budget.max_steps = take_gamma(r);
    const std::uint64_t count = take_gamma(r);
    for (std::uint64_t i = 0; i < count; ++i) {
        BitString out = take_string(r);
        TableEntry e;
        e.min_len = take_gamma(r);
        e.min_steps_any = take_gamma(r);
        e.witness = take_string(r);
        e.min_steps_at_min_len = take_gamma(r);
        if (e.witness.size() != e.min_len) throw CacheError("witness length mismatch");
        if (!t.entries.empty() && !(t.entries.rbegin()->first < out)) throw CacheError("entries out of order");
        t.entries.emplace_hint(t.entries.end(), std::move(out), std::move(e));
    }
    if (!r.at_end()) throw CacheError("trailing payload bits");
    return t;
}

void write_table_file(const std::filesystem::path& path, const ComplexityTable& t) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + tmp.string());
        const std::string bytes = encode_table(t);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw CacheError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ComplexityTable read_table_file(const std::filesystem::path& path) { return decode_table(slurp(path)); }

namespace {

std::vector<std::filesystem::path> table_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".tbl") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<CacheListing> list_cache(const std::filesystem::path& dir) {
    std::vector<CacheListing> out;
    for (const auto& path : table_files(dir)) {
        CacheListing l{path, MachineKind::prefix, {}, {}, 0, std::filesystem::file_size(path)};
        try {
            ComplexityTable t = read_table_file(path);
            l.kind = t.kind;
            l.aux = t.aux;
            l.budget = t.budget;
            l.entries = t.entries.size();
        } catch (const CacheError&) {
            l.entries = 0;
        }
        out.push_back(std::move(l));
    }
    return out;
}

std::size_t purge_cache(const std::filesystem::path& dir) {
    std::size_t n = 0;
    for (const auto& path : table_files(dir)) n += std::filesystem::remove(path) ? 1 : 0;
    return n;
}

VerifyReport verify_cache(const std::filesystem::path& dir, unsigned jobs) {
    VerifyReport rep;
    for (const auto& path : table_files(dir)) {
        ++rep.files;
        const std::string name = path.filename().string();
        ComplexityTable cached;
        try {
            cached = read_table_file(path);
        } catch (const CacheError& e) {
            rep.problems.push_back(name + ": " + e.what());
            continue;
        }
        if (name != cache_file_name(cached.kind, cached.aux, cached.budget)) {
            rep.problems.push_back(name + ": file name does not match its header");
            continue;
        }
        const ComplexityTable fresh = complexity_table(cached.kind, cached.aux, cached.budget, jobs);
        if (fresh.entries.size() != cached.entries.size()) {
            rep.problems.push_back(name + ": entry count differs from recomputation");
            continue;
        }
        std::vector<const std::pair<const BitString, TableEntry>*> all;
        for (const auto& kv : cached.entries) all.push_back(&kv);
        std::mt19937_64 rng(0x5eedULL ^ fnv1a64(name));
        const std::size_t want = std::max<std::size_t>(1, (all.size() + 99) / 100);
        std::vector<const std::pair<const BitString, TableEntry>*> sample;
        std::sample(all.begin(), all.end(), std::back_inserter(sample), std::min(want, all.size()), rng);
        for (const auto* kv : sample) {
            ++rep.sampled_entries;
            const TableEntry* e = fresh.find(kv->first);
            if (e == nullptr || !(*e == kv->second)) {
                rep.problems.push_back(name + ": entry for output '" + kv->first.str() + "' differs from recomputation");
                break;
            }
        }
    }
    return rep;
}

}  // namespace aitlab
