#ifndef CAUSALKIT_SHA256_HPP
#define CAUSALKIT_SHA256_HPP

#include <string>

namespace causal {

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file_hex(const std::string& path);  // IoError when unreadable

}  // namespace causal

#endif
