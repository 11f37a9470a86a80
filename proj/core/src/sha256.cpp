#include "causalkit/sha256.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>

#include "causalkit/errors.hpp"

namespace causal {

namespace {

struct DigestCtx {
    EVP_MD_CTX* ctx;
    DigestCtx() : ctx(EVP_MD_CTX_new()) {
        if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
            throw NumericalError("sha256: cannot initialize digest context");
        }
    }
    ~DigestCtx() { EVP_MD_CTX_free(ctx); }
    DigestCtx(const DigestCtx&) = delete;
    DigestCtx& operator=(const DigestCtx&) = delete;

    std::string finish() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx, raw.data(), &len) != 1) {
            throw NumericalError("sha256: digest finalization failed");
        }
        static const char* hex = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i) {
            out.push_back(hex[raw[i] >> 4]);
            out.push_back(hex[raw[i] & 0xf]);
        }
        return out;
    }
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    DigestCtx d;
    if (EVP_DigestUpdate(d.ctx, bytes.data(), bytes.size()) != 1) {
        throw NumericalError("sha256: digest update failed");
    }
    return d.finish();
}

std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file for hashing: " + path);
    }
    DigestCtx d;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const auto got = in.gcount();
        if (got > 0 && EVP_DigestUpdate(d.ctx, buf.data(), static_cast<size_t>(got)) != 1) {
            throw NumericalError("sha256: digest update failed");
        }
    }
    if (in.bad()) {
        throw IoError("read failure while hashing: " + path);
    }
    return d.finish();
}

}  // namespace causal
