#include "geotopics/line_reader.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace geotopics {

struct LineReader::Impl {
  std::ifstream plain;
  gzFile gz = nullptr;
  bool gz_mode = false;
  std::vector<char> buf;
  size_t pos = 0;
  size_t len = 0;
  bool eof = false;

  explicit Impl(const std::string& path) {
    gz_mode = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (gz_mode) {
      gz = gzopen(path.c_str(), "rb");
      if (!gz) throw std::runtime_error("cannot open " + path);
      buf.resize(1 << 16);
    } else {
      plain.open(path, std::ios::binary);
      if (!plain) throw std::runtime_error("cannot open " + path);
    }
  }

  ~Impl() {
    if (gz) gzclose(gz);
  }

  bool fill() {
    const int n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) throw std::runtime_error("gzip read error");
    pos = 0;
    len = static_cast<size_t>(n);
    if (n == 0) eof = true;
    return !eof;
  }

  bool next_gz(std::string& line) {
    line.clear();
    bool any = false;
    for (;;) {
      if (pos == len && !fill()) return any;
      const char* start = buf.data() + pos;
      const char* nl = static_cast<const char*>(
          std::memchr(start, '\n', len - pos));
      if (nl) {
        line.append(start, nl - start);
        pos = static_cast<size_t>(nl - buf.data()) + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
      line.append(start, len - pos);
      pos = len;
      any = true;
    }
  }

  bool next_plain(std::string& line) {
    if (!std::getline(plain, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
};

LineReader::LineReader(const std::string& path) : impl_(new Impl(path)) {}
LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::next(std::string& line) {
  return impl_->gz_mode ? impl_->next_gz(line) : impl_->next_plain(line);
}

}  // namespace geotopics
