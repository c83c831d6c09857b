#ifndef GEOTOPICS_LINE_READER_HPP
#define GEOTOPICS_LINE_READER_HPP

#include <memory>
#include <string>

namespace geotopics {

// Sequential reader over newline-delimited record files. Files ending in
// ".gz" are decompressed transparently.
class LineReader {
 public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;

  // Reads the next line into `line` (without the trailing newline).
  // Returns false at end of input.
  bool next(std::string& line);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace geotopics

#endif
