#include "po2fact/po2file.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace po2fact {

namespace {

constexpr char kMagic[4] = {'P', 'O', '2', 'F'};
constexpr std::uint32_t kVersion = 1;

// --- binary primitives (little-endian, host independent) ---

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_i16(std::string& out, std::int16_t v) {
    const auto u = static_cast<std::uint16_t>(v);
    out.push_back(static_cast<char>(u & 0xFF));
    out.push_back(static_cast<char>((u >> 8) & 0xFF));
}

class ByteReader {
public:
    explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
        return v;
    }

    std::int16_t i16() {
        need(2);
        std::uint16_t v = static_cast<std::uint8_t>(bytes_[pos_++]);
        v |= static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << 8;
        return static_cast<std::int16_t>(v);
    }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw TruncatedError("po2f: unexpected end of data");
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

void check_header_sanity(std::uint32_t n, std::uint32_t k, std::uint32_t q, std::uint32_t r_num,
                         std::uint32_t r_den) {
    if (n == 0 || k == 0 || q == 0) throw RangeError("po2f: zero dimension or factor count");
    if (r_num == 0 || r_den == 0 || r_num > r_den)
        throw RangeError("po2f: rate must lie in (0, 1]");
}

Po2Matrix read_factor_entries(std::uint32_t rows, std::uint32_t cols, std::uint64_t nnz,
                              auto&& next_entry) {
    if (rows == 0 || cols == 0) throw RangeError("po2f: zero factor dimension");
    if (nnz > static_cast<std::uint64_t>(rows) * cols)
        throw RangeError("po2f: nnz exceeds factor area");
    Po2Matrix f(static_cast<int>(rows), static_cast<int>(cols));
    for (std::uint64_t i = 0; i < nnz; ++i) {
        const auto [row, col, sign, exponent] = next_entry();
        if (sign != 1 && sign != -1) throw RangeError("po2f: entry sign must be +1 or -1");
        // push() rejects out-of-range indices and ordering violations.
        f.push(row, col, ScalarPo2{static_cast<std::int8_t>(sign), exponent});
    }
    return f;
}

struct RawEntry {
    std::uint32_t row;
    std::uint32_t col;
    int sign;
    std::int16_t exponent;
};

Factorization assemble(std::uint32_t n, std::uint32_t k, std::uint32_t q, std::uint32_t r_num,
                       std::uint32_t r_den, std::uint64_t seed, std::vector<Po2Matrix> factors) {
    if (factors.size() != q) throw RangeError("po2f: factor count does not match header");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::uint32_t want_rows = (i == 0) ? n : k;
        if (factors[i].rows() != static_cast<int>(want_rows) ||
            factors[i].cols() != static_cast<int>(k))
            throw RangeError("po2f: factor shape breaks the product chain");
    }
    Factorization fact;
    fact.rows = static_cast<int>(n);
    fact.cols = static_cast<int>(k);
    fact.factors = std::move(factors);
    fact.config.q = static_cast<int>(q);
    fact.config.rate = {r_num, r_den};
    fact.config.seed = seed;
    return fact;
}

Factorization deserialize_binary(std::string_view bytes) {
    ByteReader in(bytes.substr(5));
    const std::uint32_t version = in.u32();
    if (version != kVersion) throw VersionError("po2f: unsupported version");
    const std::uint32_t n = in.u32();
    const std::uint32_t k = in.u32();
    const std::uint32_t q = in.u32();
    const std::uint32_t r_num = in.u32();
    const std::uint32_t r_den = in.u32();
    const std::uint64_t seed = in.u64();
    check_header_sanity(n, k, q, r_num, r_den);

    std::vector<Po2Matrix> factors;
    for (std::uint32_t fi = 0; fi < q; ++fi) {
        const std::uint32_t rows = in.u32();
        const std::uint32_t cols = in.u32();
        const std::uint64_t nnz = in.u64();
        factors.push_back(read_factor_entries(rows, cols, nnz, [&]() -> RawEntry {
            const std::uint32_t row = in.u32();
            const std::uint32_t col = in.u32();
            const int sign = static_cast<std::int8_t>(in.u8());
            const std::int16_t exponent = in.i16();
            return {row, col, sign, exponent};
        }));
    }
    return assemble(n, k, q, r_num, r_den, seed, std::move(factors));
}

Factorization deserialize_text(std::string_view bytes) {
    std::istringstream in{std::string(bytes.substr(5))};
    auto next_token = [&](auto& value) {
        if (!(in >> value)) throw TruncatedError("po2f: unexpected end of text data");
    };

    std::uint32_t version = 0;
    next_token(version);
    if (version != kVersion) throw VersionError("po2f: unsupported version");

    std::uint32_t n, k, q, r_num, r_den;
    std::uint64_t seed;
    next_token(n);
    next_token(k);
    next_token(q);
    next_token(r_num);
    next_token(r_den);
    next_token(seed);
    check_header_sanity(n, k, q, r_num, r_den);

    std::vector<Po2Matrix> factors;
    for (std::uint32_t fi = 0; fi < q; ++fi) {
        std::uint32_t rows, cols;
        std::uint64_t nnz;
        next_token(rows);
        next_token(cols);
        next_token(nnz);
        factors.push_back(read_factor_entries(rows, cols, nnz, [&]() -> RawEntry {
            std::int64_t row, col, sign, exponent;
            next_token(row);
            next_token(col);
            next_token(sign);
            next_token(exponent);
            if (row < 0 || col < 0) throw RangeError("po2f: negative entry index");
            if (exponent < INT16_MIN || exponent > INT16_MAX)
                throw RangeError("po2f: exponent out of range");
            return {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col),
                    static_cast<int>(sign), static_cast<std::int16_t>(exponent)};
        }));
    }
    return assemble(n, k, q, r_num, r_den, seed, std::move(factors));
}

} // namespace

std::string serialize(const Factorization& fact, FileMode mode) {
    if (fact.factors.empty() || fact.factors.size() != static_cast<std::size_t>(fact.config.q))
        throw InvalidInputError("serialize: factor list does not match config");

    std::string out;
    out.append(kMagic, 4);
    if (mode == FileMode::Binary) {
        out.push_back('B');
        put_u32(out, kVersion);
        put_u32(out, static_cast<std::uint32_t>(fact.rows));
        put_u32(out, static_cast<std::uint32_t>(fact.cols));
        put_u32(out, static_cast<std::uint32_t>(fact.factors.size()));
        put_u32(out, fact.config.rate.num);
        put_u32(out, fact.config.rate.den);
        put_u64(out, fact.config.seed);
        for (const Po2Matrix& f : fact.factors) {
            put_u32(out, static_cast<std::uint32_t>(f.rows()));
            put_u32(out, static_cast<std::uint32_t>(f.cols()));
            put_u64(out, f.nnz());
            for (const Po2Entry& e : f.entries()) {
                put_u32(out, e.row);
                put_u32(out, e.col);
                out.push_back(static_cast<char>(e.coeff.sign));
                put_i16(out, e.coeff.exponent);
            }
        }
    } else {
        std::ostringstream text;
        text << "T " << kVersion << '\n';
        text << fact.rows << ' ' << fact.cols << ' ' << fact.factors.size() << ' '
             << fact.config.rate.num << ' ' << fact.config.rate.den << ' ' << fact.config.seed
             << '\n';
        for (const Po2Matrix& f : fact.factors) {
            text << f.rows() << ' ' << f.cols() << ' ' << f.nnz() << '\n';
            for (const Po2Entry& e : f.entries())
                text << e.row << ' ' << e.col << ' ' << static_cast<int>(e.coeff.sign) << ' '
                     << e.coeff.exponent << '\n';
        }
        out += text.str();
    }
    return out;
}

Factorization deserialize(std::string_view bytes) {
    if (bytes.size() < 5) throw TruncatedError("po2f: too short for the header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw BadMagicError("po2f: bad magic");
    const char mode = bytes[4];
    if (mode == 'B') return deserialize_binary(bytes);
    if (mode == 'T') return deserialize_text(bytes);
    throw FormatError("po2f: unknown mode byte");
}

void save_po2f(const std::filesystem::path& path, const Factorization& fact, FileMode mode) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    const std::string bytes = serialize(fact, mode);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed: " + path.string());
}

Factorization load_po2f(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

} // namespace po2fact
