#include <fstream>

#include <openssl/evp.h>

#include "toycascade/cli/app.hpp"

#ifndef TOYCASCADE_GIT_DESCRIBE
#define TOYCASCADE_GIT_DESCRIBE "unknown"
#endif

namespace toycascade::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

void OutputSet::write(const std::string& name, const std::string& contents) {
  std::filesystem::create_directories(dir_);
  const auto path = dir_ / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << contents;
  f.close();
  if (!f) throw std::runtime_error("cannot write " + path.string());
  for (OutputFile& o : files_)
    if (o.path == name) {
      o.sha256 = sha256_hex(contents);
      return;
    }
  files_.push_back({name, sha256_hex(contents)});
}

std::string git_describe() { return TOYCASCADE_GIT_DESCRIBE; }

}  // namespace toycascade::cli
