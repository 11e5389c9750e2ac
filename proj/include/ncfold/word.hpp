#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncfold {

class Rng;

/// A generator alpha_g (inverted == false) or its inverse.
/// Generators are numbered from 1.
struct Letter {
  std::uint32_t generator = 1;
  bool inverted = false;

  constexpr Letter inverse() const noexcept { return {generator, !inverted}; }

  /// Dense code in [0, 2k): 2*(generator-1) + inverted. inverse <=> code ^ 1.
  constexpr std::uint32_t code() const noexcept {
    return 2 * (generator - 1) + (inverted ? 1u : 0u);
  }
  static constexpr Letter from_code(std::uint32_t code) noexcept {
    return {code / 2 + 1, (code & 1u) != 0};
  }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

/// Finite word over the 2k letters alpha_1, ..., alpha_k and their inverses.
class Word {
 public:
  explicit Word(std::size_t k);
  Word(std::size_t k, std::vector<Letter> letters);
  Word(std::size_t k, std::initializer_list<Letter> letters);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  std::span<const Letter> letters() const noexcept { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& back() const { return letters_.back(); }

  void push_back(Letter letter);
  void pop_back() { letters_.pop_back(); }
  void truncate(std::size_t length);

  /// Letter codes (see Letter::code), one byte per letter when k <= 128.
  std::vector<std::uint32_t> codes() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t k_;
  std::vector<Letter> letters_;
};

enum class WordFormat {
  Compact,  ///< "aBc": a..z are generators 1..26, A..Z their inverses
  Signed,   ///< "1 -2 3": signed generator indices
};

/// Parses either text format. Input containing a digit or a sign is read as
/// signed integers; anything else as compact letters. Whitespace and commas
/// separate tokens. Throws std::invalid_argument on malformed input or a
/// generator above k.
Word parse_word(std::string_view text, std::size_t k);

/// Compact output requires k <= 26.
std::string format_word(const Word& w, WordFormat format = WordFormat::Compact);

/// Uniform i.i.d. letters; each of the 2k letters has probability 1/(2k).
Word sample_word(std::size_t n, std::size_t k, Rng& rng);

/// Cancels adjacent x x^-1 pairs until none remain (single stack pass).
Word free_reduce(const Word& w);

/// Reversed, letterwise inverted.
Word inverse(const Word& w);

Word concat(const Word& u, const Word& v);

/// h w h^-1.
Word conjugate(const Word& w, const Word& h);

}  // namespace ncfold
