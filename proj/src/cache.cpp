#include "gdet/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "gdet/serialize.hpp"

namespace gdet {
namespace {

class FileLock {
public:
  FileLock(const std::filesystem::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::runtime_error("cache: cannot open lock file " + path.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw std::runtime_error("cache: cannot lock " + path.string());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

private:
  int fd_ = -1;
};

std::filesystem::path lock_path(const std::filesystem::path& file) {
  auto p = file;
  p += ".lock";
  return p;
}

// Keeps [A-Za-z0-9_], writes any other byte as ~XX.
std::string encode_name(const std::string& name) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : name) {
    if (std::isalnum(c) || c == '_') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('~');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

std::optional<std::string> decode_name(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '~') {
      out.push_back(s[i]);
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    unsigned v = 0;
    if (std::from_chars(s.data() + i + 1, s.data() + i + 3, v, 16).ec != std::errc{}) return std::nullopt;
    out.push_back(static_cast<char>(v));
    i += 2;
  }
  return out;
}

}  // namespace

CacheKey CacheKey::for_group(const FiniteGroup& g, unsigned k, CoefficientMode mode) {
  return CacheKey{g.name(), g.gap_id(), k, mode};
}

PolyCache::PolyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw std::runtime_error("cache: cannot create directory " + dir_.string());
  }
}

// <name>.g<order>-<number>.k<k>.<mode>.gdet, with g0-0 when there is no GAP id
std::filesystem::path PolyCache::path_for(const CacheKey& key) const {
  std::string file = encode_name(key.group);
  file += ".g";
  file += key.gap_id ? std::to_string(key.gap_id->order) + "-" + std::to_string(key.gap_id->number) : "0-0";
  file += ".k" + std::to_string(key.k) + "." + std::string(to_string(key.mode)) + ".gdet";
  return dir_ / file;
}

std::optional<std::uint64_t> PolyCache::peek_count(const CacheKey& key) const {
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  FileLock lock(lock_path(path), false);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const PolyHeader h = read_poly_header(in);
    if (h.mode != key.mode) return std::nullopt;
    return h.term_count;
  } catch (const FormatError&) {
    return std::nullopt;
  }
}

template <class Scalar>
std::optional<SparsePoly<Scalar>> PolyCache::load(const CacheKey& key) const {
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  FileLock lock(lock_path(path), false);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return read_poly<Scalar>(in);
  } catch (const FormatError&) {
    return std::nullopt;
  }
}

template <class Scalar>
void PolyCache::store(const CacheKey& key, const SparsePoly<Scalar>& poly) const {
  if (key.mode != mode_of_v<Scalar>) throw std::invalid_argument("cache: key mode does not match coefficients");
  const auto path = path_for(key);
  FileLock lock(lock_path(path), true);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    write_poly(out, poly);
    out.flush();
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cache: cannot replace " + path.string() + ": " + ec.message());
}

std::vector<CacheKey> PolyCache::entries() const {
  std::vector<CacheKey> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const std::string file = entry.path().filename().string();
    if (!file.ends_with(".gdet")) continue;
    // split from the right: name . g<o>-<n> . k<k> . mode . gdet
    std::vector<std::string> parts;
    std::size_t end = file.size() - 5;
    for (int i = 0; i < 3; ++i) {
      const std::size_t dot = file.rfind('.', end - 1);
      if (dot == std::string::npos) break;
      parts.push_back(file.substr(dot + 1, end - dot - 1));
      end = dot;
    }
    if (parts.size() != 3) continue;
    const auto name = decode_name(std::string_view(file).substr(0, end));
    if (!name) continue;
    CacheKey key;
    key.group = *name;
    try {
      key.mode = parse_coefficient_mode(parts[0]);
    } catch (const std::exception&) {
      continue;
    }
    if (parts[1].size() < 2 || parts[1][0] != 'k') continue;
    if (std::from_chars(parts[1].data() + 1, parts[1].data() + parts[1].size(), key.k).ec != std::errc{}) continue;
    unsigned o = 0, num = 0;
    const auto dash = parts[2].find('-');
    if (parts[2].empty() || parts[2][0] != 'g' || dash == std::string::npos) continue;
    if (std::from_chars(parts[2].data() + 1, parts[2].data() + dash, o).ec != std::errc{}) continue;
    if (std::from_chars(parts[2].data() + dash + 1, parts[2].data() + parts[2].size(), num).ec != std::errc{}) continue;
    if (o != 0) key.gap_id = GapId{o, num};
    out.push_back(std::move(key));
  }
  return out;
}

template std::optional<SparsePoly<Integer>> PolyCache::load<Integer>(const CacheKey&) const;
template std::optional<SparsePoly<ModP61>> PolyCache::load<ModP61>(const CacheKey&) const;
template void PolyCache::store<Integer>(const CacheKey&, const SparsePoly<Integer>&) const;
template void PolyCache::store<ModP61>(const CacheKey&, const SparsePoly<ModP61>&) const;

}  // namespace gdet
