#include "ncfold/word.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "ncfold/rng.hpp"

namespace ncfold {

namespace {

void check_letter(const Letter& letter, std::size_t k) {
  if (letter.generator < 1 || letter.generator > k) {
    throw std::invalid_argument("generator " + std::to_string(letter.generator) +
                                " out of range 1.." + std::to_string(k));
  }
}

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

Word parse_signed(std::string_view text, std::size_t k) {
  Word w(k);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_separator(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_separator(text[end])) ++end;
    std::string_view token = text.substr(pos, end - pos);
    bool negative = false;
    std::string_view digits = token;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      negative = digits.front() == '-';
      digits.remove_prefix(1);
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed token '" + std::string(token) + "'");
    }
    if (value == 0 || value > k) {
      throw std::invalid_argument("generator " + std::string(token) + " out of range 1.." +
                                  std::to_string(k));
    }
    w.push_back(Letter{static_cast<std::uint32_t>(value), negative});
    pos = end;
  }
  return w;
}

Word parse_compact(std::string_view text, std::size_t k) {
  Word w(k);
  for (char c : text) {
    if (is_separator(c)) continue;
    if (c >= 'a' && c <= 'z') {
      w.push_back(Letter{static_cast<std::uint32_t>(c - 'a' + 1), false});
    } else if (c >= 'A' && c <= 'Z') {
      w.push_back(Letter{static_cast<std::uint32_t>(c - 'A' + 1), true});
    } else {
      throw std::invalid_argument(std::string("malformed character '") + c + "'");
    }
  }
  return w;
}

}  // namespace

Word::Word(std::size_t k) : k_(k) {
  if (k < 1) throw std::invalid_argument("alphabet size k must be at least 1");
}

Word::Word(std::size_t k, std::vector<Letter> letters) : Word(k) {
  for (const auto& letter : letters) check_letter(letter, k_);
  letters_ = std::move(letters);
}

Word::Word(std::size_t k, std::initializer_list<Letter> letters)
    : Word(k, std::vector<Letter>(letters)) {}

void Word::push_back(Letter letter) {
  check_letter(letter, k_);
  letters_.push_back(letter);
}

void Word::truncate(std::size_t length) {
  if (length < letters_.size()) letters_.resize(length);
}

std::vector<std::uint32_t> Word::codes() const {
  std::vector<std::uint32_t> out;
  out.reserve(letters_.size());
  for (const auto& letter : letters_) out.push_back(letter.code());
  return out;
}

Word parse_word(std::string_view text, std::size_t k) {
  if (k < 1) throw std::invalid_argument("alphabet size k must be at least 1");
  bool numeric = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      numeric = true;
      break;
    }
  }
  if (numeric) return parse_signed(text, k);
  if (k > 26 && text.find_first_not_of(" \t\r\n,") != std::string_view::npos) throw std::invalid_argument("compact format supports k <= 26");
  return parse_compact(text, k);
}

std::string format_word(const Word& w, WordFormat format) {
  std::string out;
  if (format == WordFormat::Compact) {
    if (w.k() > 26) throw std::invalid_argument("compact format supports k <= 26");
    out.reserve(w.size());
    for (const auto& letter : w.letters()) {
      const char base = letter.inverted ? 'A' : 'a';
      out.push_back(static_cast<char>(base + letter.generator - 1));
    }
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out.push_back(' ');
    if (w[i].inverted) out.push_back('-');
    out += std::to_string(w[i].generator);
  }
  return out;
}

Word sample_word(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<Letter> letters;
  letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    letters.push_back(Letter::from_code(static_cast<std::uint32_t>(rng.uniform_below(2 * k))));
  }
  return Word(k, std::move(letters));
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& letter : w.letters()) {
    if (!stack.empty() && stack.back() == letter.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(letter);
    }
  }
  return Word(w.k(), std::move(stack));
}

Word inverse(const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.size());
  for (std::size_t i = w.size(); i-- > 0;) letters.push_back(w[i].inverse());
  return Word(w.k(), std::move(letters));
}

Word concat(const Word& u, const Word& v) {
  if (u.k() != v.k()) throw std::invalid_argument("concat: alphabet sizes differ");
  std::vector<Letter> letters(u.letters().begin(), u.letters().end());
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.k(), std::move(letters));
}

Word conjugate(const Word& w, const Word& h) {
  if (w.k() != h.k()) throw std::invalid_argument("conjugate: alphabet sizes differ");
  return concat(concat(h, w), inverse(h));
}

}  // namespace ncfold
