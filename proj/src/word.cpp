#include "coresurf/word.hpp"

#include <algorithm>
#include <cctype>

namespace coresurf {

namespace {

const char kCompact[] = "abcd";

bool compact_letter(char c, Letter* out) {
  for (int i = 0; i < 4; ++i) {
    if (c == kCompact[i]) {
      *out = Letter::make(i + 1, false);
      return true;
    }
    if (c == std::toupper(kCompact[i])) {
      *out = Letter::make(i + 1, true);
      return true;
    }
  }
  return false;
}

}  // namespace

Word parse_word(const std::string& text, const Presentation& p) {
  Word out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < n && text[i] == '1') {
    std::size_t j = i + 1;
    while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == n) return out;
  }
  while (true) {
    skip_ws();
    if (i >= n) break;
    const char c = text[i];
    Letter l;
    if (c == 'a' || c == 'b') {
      // Indexed token a<i>/b<i>, or (genus 2 only) bare a/b.
      std::size_t j = i + 1;
      if (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
        std::size_t k = j;
        while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        const int idx = std::stoi(text.substr(j, k - j));
        if (idx < 1 || idx > p.genus())
          throw ParseError("generator index out of range", i);
        const int gen = 2 * (idx - 1) + (c == 'a' ? 1 : 2);
        bool inv = false;
        if (k < n && text[k] == '\'') {
          inv = true;
          ++k;
        }
        out.push_back(Letter::make(gen, inv));
        i = k;
        continue;
      }
      if (p.genus() != 2)
        throw ParseError("bare letters need genus 2; use a<i>/b<i>", i);
      l = Letter::make(c == 'a' ? 1 : 2, false);
    } else if (p.genus() == 2 && compact_letter(c, &l)) {
      // c, d and the uppercase inverses.
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
    if (i < n && text[i] == '\'') {
      l = l.inverse();
      ++i;
    }
    out.push_back(l);
  }
  return out;
}

std::string format_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::string out;
  if (p.genus() == 2) {
    for (Letter l : w) {
      char c = kCompact[l.generator() - 1];
      out += l.is_inverse() ? static_cast<char>(std::toupper(c)) : c;
    }
    return out;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    const Letter l = w[k];
    const int gen = l.generator();
    out += (gen % 2 == 1) ? 'a' : 'b';
    out += std::to_string((gen - 1) / 2 + 1);
    if (l.is_inverse()) out += '\'';
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k + 1] == w[k].inverse()) return false;
  return true;
}

Word cyclic_free_reduce(Word w) {
  w = free_reduce(std::move(w));
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + lo, w.begin() + hi);
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != w.back().inverse();
}

Word rotate(const Word& w, int k) {
  if (w.empty()) return w;
  const int n = static_cast<int>(w.size());
  k = ((k % n) + n) % n;
  Word out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

CyclicWord::CyclicWord(const Word& w) {
  if (!is_cyclically_reduced(w))
    throw std::invalid_argument("CyclicWord needs a cyclically reduced word");
  rep_ = w;
  const int n = static_cast<int>(w.size());
  for (int k = 1; k < n; ++k) {
    Word cand = rotate(w, k);
    if (cand < rep_) {
      rep_ = std::move(cand);
      rotation_ = k;
    }
  }
}

}  // namespace coresurf
