#include "froblang/words.hpp"

#include <algorithm>

#include "froblang/errors.hpp"

namespace froblang {

std::uint64_t ParikhVector::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

ParikhVector ParikhVector::operator+(const ParikhVector& other) const {
    if (counts.size() != other.counts.size())
        throw DomainError("Parikh vectors over different alphabets");
    ParikhVector out = *this;
    for (std::size_t i = 0; i < counts.size(); ++i) out.counts[i] += other.counts[i];
    return out;
}

namespace {

void check_alphabet(std::size_t n) {
    if (n == 0 || n > kMaxAlphabet)
        throw DomainError("alphabet size must be between 1 and " + std::to_string(kMaxAlphabet));
}

}  // namespace

Word::Word(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {
    check_alphabet(alphabet_size);
}

Word::Word(std::size_t alphabet_size, std::vector<Letter> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
    check_alphabet(alphabet_size);
    for (auto l : letters_)
        if (l.index >= alphabet_size_) throw DomainError("letter outside alphabet");
}

Word Word::parse(std::string_view text, std::size_t alphabet_size) {
    Word w(alphabet_size);
    w.letters_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        int idx = -1;
        if (ch >= 'a' && ch <= 'd') idx = ch - 'a';
        else if (ch >= '0' && ch <= '3') idx = ch - '0';
        if (idx < 0 || static_cast<std::size_t>(idx) >= alphabet_size)
            throw ParseError(std::string("invalid letter '") + ch + "'", i);
        w.letters_.push_back(Letter{static_cast<std::uint8_t>(idx)});
    }
    return w;
}

void Word::push_back(Letter l) {
    if (l.index >= alphabet_size_) throw DomainError("letter outside alphabet");
    letters_.push_back(l);
}

void Word::append(const Word& other) {
    if (other.alphabet_size_ != alphabet_size_) throw DomainError("alphabet mismatch in append");
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
}

void Word::truncate(std::size_t n) {
    if (n < letters_.size()) letters_.resize(n);
}

Word Word::substr(std::size_t pos, std::size_t len) const {
    Word out(alphabet_size_);
    if (pos >= letters_.size()) return out;
    len = std::min(len, letters_.size() - pos);
    out.letters_.assign(letters_.begin() + pos, letters_.begin() + pos + len);
    return out;
}

bool Word::starts_with(const Word& prefix) const {
    return prefix.size() <= size() &&
           std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (auto l : letters_) s.push_back(static_cast<char>('a' + l.index));
    return s;
}

std::string Word::digits() const {
    std::string s;
    s.reserve(letters_.size());
    for (auto l : letters_) s.push_back(static_cast<char>('0' + l.index));
    return s;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    if (auto c = alphabet_size_ <=> other.alphabet_size_; c != 0) return c;
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                  other.letters_.begin(), other.letters_.end());
}

Word reverse(const Word& w) {
    std::vector<Letter> v(w.letters().rbegin(), w.letters().rend());
    return Word(w.alphabet_size(), std::move(v));
}

ParikhVector parikh(const Word& w) {
    ParikhVector p;
    p.counts.assign(w.alphabet_size(), 0);
    for (auto l : w.letters()) ++p.counts[l.index];
    return p;
}

bool is_palindrome(const Word& w) {
    auto l = w.letters();
    return std::equal(l.begin(), l.begin() + l.size() / 2, l.rbegin());
}

Morphism::Morphism(std::size_t alphabet_size, std::vector<Word> images)
    : alphabet_size_(alphabet_size), images_(std::move(images)) {
    check_alphabet(alphabet_size);
    if (images_.size() != alphabet_size_)
        throw DomainError("morphism needs one image per letter");
    for (const auto& img : images_) {
        if (img.empty()) throw DomainError("erasing morphisms are not supported");
        if (img.alphabet_size() != alphabet_size_)
            throw DomainError("morphism image over a different alphabet");
    }
}

Morphism Morphism::from_strings(std::size_t alphabet_size, const std::vector<std::string>& images) {
    std::vector<Word> w;
    w.reserve(images.size());
    for (const auto& s : images) w.push_back(Word::parse(s, alphabet_size));
    return Morphism(alphabet_size, std::move(w));
}

bool Morphism::prolongable_on(Letter seed) const {
    if (seed.index >= alphabet_size_) return false;
    const Word& img = images_[seed.index];
    return img.size() >= 2 && img[0] == seed;
}

std::vector<std::vector<std::uint64_t>> Morphism::incidence() const {
    std::vector<std::vector<std::uint64_t>> m(alphabet_size_,
                                              std::vector<std::uint64_t>(alphabet_size_, 0));
    for (std::size_t j = 0; j < alphabet_size_; ++j)
        for (auto l : images_[j].letters()) ++m[l.index][j];
    return m;
}

Word apply_morphism(const Morphism& m, const Word& w) {
    if (w.alphabet_size() != m.alphabet_size())
        throw DomainError("word and morphism alphabets differ");
    std::size_t len = 0;
    for (auto l : w.letters()) len += m.image(l).size();
    std::vector<Letter> out;
    out.reserve(len);
    for (auto l : w.letters()) {
        auto img = m.image(l).letters();
        out.insert(out.end(), img.begin(), img.end());
    }
    return Word(m.alphabet_size(), std::move(out));
}

Morphism compose(const Morphism& f, const Morphism& g) {
    if (f.alphabet_size() != g.alphabet_size()) throw DomainError("alphabet mismatch in compose");
    std::vector<Word> images;
    for (const auto& img : g.images()) images.push_back(apply_morphism(f, img));
    return Morphism(f.alphabet_size(), std::move(images));
}

Word fixed_point_prefix(const Morphism& m, Letter seed, std::size_t min_len) {
    if (!m.prolongable_on(seed)) throw DomainError("morphism is not prolongable on the seed");
    // x = m(x): the image of x[i] is appended while i stays behind the write head.
    std::vector<Letter> x(m.image(seed).letters().begin(), m.image(seed).letters().end());
    x.reserve(min_len + 64);
    for (std::size_t i = 1; x.size() < min_len; ++i) {
        auto img = m.image(x[i]).letters();
        x.insert(x.end(), img.begin(), img.end());
    }
    if (x.size() > min_len) x.resize(min_len);
    return Word(m.alphabet_size(), std::move(x));
}

Word iterate(const Morphism& m, const Word& w, unsigned k) {
    Word out = w;
    for (unsigned i = 0; i < k; ++i) out = apply_morphism(m, out);
    return out;
}

namespace catalog {

Morphism fibonacci() { return Morphism::from_strings(2, {"01", "0"}); }
Morphism thue_morse() { return Morphism::from_strings(2, {"ab", "ba"}); }
Morphism folding5() { return Morphism::from_strings(4, {"abcba", "bcdcb", "cdadc", "dabad"}); }
Morphism rotation() { return Morphism::from_strings(4, {"b", "c", "d", "a"}); }

Morphism by_name(std::string_view name) {
    if (name == "fib") return fibonacci();
    if (name == "tm") return thue_morse();
    if (name == "folding5") return folding5();
    if (name == "rotation") return rotation();
    throw ParseError("unknown morphism '" + std::string(name) + "'", 0);
}

}  // namespace catalog

}  // namespace froblang
