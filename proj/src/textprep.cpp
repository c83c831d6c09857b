#include "geotopics/textprep.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>

namespace geotopics {

namespace {

// ---- minimal UTF-8 <-> UTF-32 ----

std::u32string decode_utf8(const std::string& s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6 && i + 1 < n) {
      cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((c >> 4) == 0xE && i + 2 < n) {
      cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((c >> 3) == 0x1E && i + 3 < n) {
      cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 |
           (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::u32string& s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

// ---- codepoint classification ----

bool is_ws(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;  // Latin-1 À..Þ
  if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x0178) return 0xFF;
  if (c == 0x0179 || c == 0x017B || c == 0x017D) return c + 1;
  return c;
}

// Letters the pipeline retains: lowercase basic Latin, Latin-1 and Latin
// Extended-A. Everything else (digits, punctuation, symbols, pictographs,
// scripts we cannot lowercase) is stripped.
bool is_keep_letter(char32_t c) {
  if (c >= U'a' && c <= U'z') return true;
  if (c >= 0xDF && c <= 0xFF && c != 0xF7) return true;  // ß à..ÿ minus ÷
  if (c >= 0x0100 && c <= 0x017F) return to_lower(c) == c;
  return false;
}

bool is_mark(char32_t c) { return c >= 0x0300 && c <= 0x036F; }

bool is_vowel(char32_t c) {
  static const std::u32string vowels =
      U"aeiouáéíóúâêîôûãõàèìòùü";
  return vowels.find(c) != std::u32string::npos;
}

// ---- singularization ----

bool in_exceptions(const std::u32string& w) {
  static const std::array<std::u32string, 12> exceptions = {
      U"lapis", U"lápis", U"onibus", U"ônibus", U"pires",  U"virus",
      U"vírus", U"cais",  U"oasis",  U"oásis",  U"tenis",  U"tênis"};
  return std::find(exceptions.begin(), exceptions.end(), w) !=
         exceptions.end();
}

bool ends_with(const std::u32string& w, const std::u32string& suf) {
  return w.size() >= suf.size() &&
         w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

// Applies one de-pluralization rule; returns true if the word changed.
// Rules only fire when the result keeps at least 3 characters.
bool singular_step(std::u32string& w) {
  if (w.empty() || w.back() != U's' || in_exceptions(w)) return false;

  struct Rule { std::u32string suffix, replacement; };
  static const std::array<Rule, 10> rules = {{
      {U"ões", U"ão"}, {U"ães", U"ão"}, {U"ãos", U"ão"}, {U"oes", U"ao"},
      {U"ns", U"m"},
      {U"res", U"r"}, {U"zes", U"z"}, {U"ses", U"s"},
      {U"ais", U"al"},
      {U"éis", U"el"},
  }};
  auto apply = [&](const std::u32string& suf, const std::u32string& rep) {
    const std::u32string cand =
        w.substr(0, w.size() - suf.size()) + rep;
    if (cand.size() < 3) return false;
    w = cand;
    return true;
  };
  for (const auto& r : rules)
    if (ends_with(w, r.suffix)) return apply(r.suffix, r.replacement);
  if (ends_with(w, U"óis")) return apply(U"óis", U"ol");
  if (ends_with(w, U"is") && w.size() >= 3 && is_vowel(w[w.size() - 3]))
    return apply(U"is", U"il");
  if (w.size() >= 2 && is_vowel(w[w.size() - 2]))
    return apply(U"s", U"");
  return false;
}

std::u32string singularize_cps(std::u32string w) {
  // Iterate to a fixpoint so the operation is idempotent.
  for (int i = 0; i < 64 && singular_step(w); ++i) {}
  return w;
}

std::u32string collapse_cps(const std::u32string& w) {
  std::u32string out;
  out.reserve(w.size());
  size_t run = 0;
  for (char32_t c : w) {
    if (!out.empty() && out.back() == c)
      ++run;
    else
      run = 1;
    if (run <= 3) out.push_back(c);
  }
  return out;
}

bool starts_with(const std::u32string& w, const std::u32string& pre) {
  return w.size() >= pre.size() && w.compare(0, pre.size(), pre) == 0;
}

bool is_url_like(const std::u32string& w) {
  return starts_with(w, U"http://") || starts_with(w, U"https://") ||
         starts_with(w, U"www.");
}

// One whitespace-delimited word through steps 2-5. Returns the surviving
// token or an empty string.
std::u32string normalize_word(const std::u32string& word) {
  if (word.empty()) return {};
  if (word.front() == U'@' || word.front() == U'#' || is_url_like(word))
    return {};

  std::u32string w;
  w.reserve(word.size());
  for (char32_t c : word)
    if (c < U'0' || c > U'9') w.push_back(c);

  // Keep only letters and combining marks, then reduce plural forms and
  // elongated spellings to a joint fixpoint so re-normalizing an already
  // normalized token is a no-op.
  std::u32string letters;
  letters.reserve(w.size());
  for (char32_t c : w)
    if (is_keep_letter(c) || is_mark(c)) letters.push_back(c);

  for (int i = 0; i < 64; ++i) {
    std::u32string next = collapse_cps(singularize_cps(letters));
    if (next == letters) break;
    letters = std::move(next);
  }
  return letters;
}

bool single_char_repeat(const std::u32string& w) {
  return !w.empty() &&
         std::all_of(w.begin(), w.end(), [&](char32_t c) { return c == w[0]; });
}

}  // namespace

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    set.insert(line);
  }
  return set;
}

std::string collapse_repeats(const std::string& token) {
  return encode_utf8(collapse_cps(decode_utf8(token)));
}

std::string singularize(const std::string& token) {
  return encode_utf8(singularize_cps(decode_utf8(token)));
}

std::vector<std::string> normalize(const std::string& text,
                                   const StopwordSet& stopwords) {
  std::u32string cps = decode_utf8(text);
  for (char32_t& c : cps) c = to_lower(c);

  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_ws(cps[i])) ++i;
    size_t j = i;
    while (j < cps.size() && !is_ws(cps[j])) ++j;
    if (j > i) {
      std::u32string tok = normalize_word(cps.substr(i, j - i));
      if (tok.size() >= 3 && !single_char_repeat(tok)) {
        std::string utf8 = encode_utf8(tok);
        if (!stopwords.count(utf8)) tokens.push_back(std::move(utf8));
      }
    }
    i = j;
  }
  return tokens;
}

PrepReport prep_stream(
    const std::function<bool(PrepInput&)>& next_post,
    const StopwordSet& stopwords,
    const std::function<void(const Document&)>& emit) {
  PrepReport report;
  PrepInput in;
  while (next_post(in)) {
    ++report.input_count;
    Document doc;
    doc.post_id = in.post_id;
    doc.user_id = in.user_id;
    doc.created_at = in.created_at;
    doc.tokens = normalize(in.text, stopwords);
    if (doc.tokens.empty()) {
      ++report.emptied_count;
    } else {
      ++report.emitted_count;
      emit(doc);
    }
  }
  return report;
}

}  // namespace geotopics
