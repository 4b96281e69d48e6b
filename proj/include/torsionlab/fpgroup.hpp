#pragma once
// Free-group words, finitely presented groups and Fox free differential calculus.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsionlab/error.hpp"

namespace torsionlab {

struct Letter {
    std::uint32_t generator = 0;
    int exponent = 1;  // +1 or -1

    Letter inverse() const { return {generator, -exponent}; }
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A freely reduced word.
class Word {
public:
    Word() = default;

    /// Accepts arbitrary integer exponents; expands to +-1 letters and reduces.
    static Word from_powers(const std::vector<std::pair<std::uint32_t, long>>& powers) {
        Word w;
        for (const auto& [g, e] : powers) {
            const int s = e < 0 ? -1 : 1;
            for (long k = 0; k < (e < 0 ? -e : e); ++k) w.push({g, s});
        }
        return w;
    }
    static Word from_letters(const std::vector<Letter>& letters) {
        Word w;
        for (const auto& l : letters) w.push(l);
        return w;
    }
    static Word generator(std::uint32_t g, int exponent = 1) { return from_letters({{g, exponent}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
        return w;
    }

    friend Word operator*(Word a, const Word& b) {
        for (const auto& l : b.letters_) a.push(l);
        return a;
    }

    /// Prefix of the first k letters (already reduced).
    Word prefix(std::size_t k) const {
        Word w;
        w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<long>(k));
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    void push(const Letter& l) {
        if (!letters_.empty() && letters_.back().generator == l.generator && letters_.back().exponent == -l.exponent) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }
    std::vector<Letter> letters_;
};

/// Reduces an arbitrary letter sequence; idempotent on reduced words.
inline std::vector<Letter> free_reduce(const std::vector<Letter>& letters) { return Word::from_letters(letters).letters(); }

/// Element of the integral group ring Z[F]: exact integer coefficients.
class GroupRingElement {
public:
    GroupRingElement() = default;
    static GroupRingElement one() { return from_word(Word{}); }
    static GroupRingElement from_word(const Word& w, long long coeff = 1) {
        GroupRingElement e;
        e.add(w, coeff);
        return e;
    }

    const std::map<Word, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Word& w, long long coeff) {
        if (coeff == 0) return;
        auto [it, fresh] = terms_.try_emplace(w, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement r;
        for (const auto& [u, cu] : a.terms_)
            for (const auto& [v, cv] : b.terms_) r.add(u * v, cu * cv);
        return r;
    }
    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    std::map<Word, long long> terms_;
};

/// d(word)/d(x_generator), by the product rule letter by letter:
/// a letter x_j contributes +prefix, a letter x_j^-1 contributes -prefix*x_j^-1.
inline GroupRingElement fox_derivative(const Word& word, std::uint32_t generator, std::uint32_t generator_count) {
    if (generator >= generator_count) throw Error(ErrorKind::domain, "Fox derivative: generator index out of range");
    GroupRingElement d;
    const auto& ls = word.letters();
    for (std::size_t k = 0; k < ls.size(); ++k) {
        if (ls[k].generator >= generator_count) throw Error(ErrorKind::domain, "word uses a generator outside the presentation");
        if (ls[k].generator != generator) continue;
        if (ls[k].exponent > 0) {
            d.add(word.prefix(k), 1);
        } else {
            d.add(word.prefix(k + 1), -1);
        }
    }
    return d;
}

class GroupPresentation {
public:
    GroupPresentation() = default;

    /// Relators are given as raw letter sequences; each is freely reduced and
    /// must be nonempty afterwards.
    GroupPresentation(std::vector<std::string> generator_names, const std::vector<std::vector<Letter>>& raw_relators)
        : names_(std::move(generator_names)) {
        if (names_.empty()) throw Error(ErrorKind::domain, "presentation needs at least one generator");
        for (const auto& raw : raw_relators) {
            for (const auto& l : raw)
                if (l.generator >= names_.size()) throw Error(ErrorKind::domain, "relator uses an unknown generator");
            Word w = Word::from_letters(raw);
            if (w.empty()) throw Error(ErrorKind::domain, "relator reduces to the empty word");
            was_reduced_.push_back(w.length() == raw.size());
            relators_.push_back(std::move(w));
        }
    }

    std::uint32_t generator_count() const { return static_cast<std::uint32_t>(names_.size()); }
    const std::vector<std::string>& generator_names() const { return names_; }
    const std::vector<Word>& relators() const { return relators_; }
    /// Whether relator k arrived already freely reduced.
    const std::vector<bool>& relators_reduced_on_input() const { return was_reduced_; }
    long deficiency() const { return static_cast<long>(names_.size()) - static_cast<long>(relators_.size()); }

    std::uint32_t generator_index(std::string_view name) const {
        for (std::uint32_t k = 0; k < names_.size(); ++k)
            if (names_[k] == name) return k;
        throw Error(ErrorKind::parse, "unknown generator '" + std::string(name) + "'");
    }

    /// Parses a word: a generator letter (lowercase) or its inverse
    /// (uppercase), each optionally followed by ^k with k a signed integer.
    std::vector<Letter> parse_letters(std::string_view text) const {
        std::vector<Letter> out;
        std::size_t i = 0;
        while (i < text.size()) {
            const char ch = text[i];
            if (!std::isalpha(static_cast<unsigned char>(ch))) {
                throw Error(ErrorKind::parse, "unexpected character '" + std::string(1, ch) + "' in word '" + std::string(text) + "'");
            }
            const bool inverse = std::isupper(static_cast<unsigned char>(ch)) != 0;
            const std::uint32_t g = generator_index(std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch)))));
            ++i;
            long power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t start = i;
                if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[i - 1])))) {
                    throw Error(ErrorKind::parse, "missing exponent in word '" + std::string(text) + "'");
                }
                power = std::stol(std::string(text.substr(start, i - start)));
            }
            if (inverse) power = -power;
            const int s = power < 0 ? -1 : 1;
            for (long k = 0; k < (power < 0 ? -power : power); ++k) out.push_back({g, s});
        }
        return out;
    }

    Word parse_word(std::string_view text) const { return Word::from_letters(parse_letters(text)); }

    std::string format_word(const Word& w) const {
        std::string s;
        for (const auto& l : w.letters()) {
            const std::string& n = names_[l.generator];
            if (l.exponent > 0) {
                s += n;
            } else {
                for (char c : n) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            }
        }
        return s;
    }

    /// Canonical text form; also the input format.
    std::string to_text() const {
        std::ostringstream os;
        os << "gens:";
        for (const auto& n : names_) os << ' ' << n;
        os << '\n';
        for (const auto& r : relators_) os << "rel: " << format_word(r) << '\n';
        return os.str();
    }

    /// Reads `gens: a b ...` followed by `rel: <word>` lines; '#' starts a comment.
    static GroupPresentation parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string line;
        std::vector<std::string> names;
        std::vector<std::string> rel_text;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string key;
            if (!(ls >> key)) continue;
            if (key == "gens:") {
                std::string n;
                while (ls >> n) {
                    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0]))) {
                        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": generator names must be single lowercase letters");
                    }
                    names.push_back(n);
                }
            } else if (key == "rel:") {
                std::string w;
                if (!(ls >> w)) throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": empty relator");
                rel_text.push_back(w);
            } else {
                throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
        }
        GroupPresentation shell;
        shell.names_ = names;
        if (names.empty()) throw Error(ErrorKind::domain, "presentation needs at least one generator");
        std::vector<std::vector<Letter>> raw;
        for (const auto& w : rel_text) raw.push_back(shell.parse_letters(w));
        return GroupPresentation(std::move(names), raw);
    }

private:
    std::vector<std::string> names_;
    std::vector<Word> relators_;
    std::vector<bool> was_reduced_;
};

struct PresentationReport {
    std::uint32_t generator_count = 0;
    std::size_t relator_count = 0;
    long deficiency = 0;
    bool relators_reduced = true;  // all relators arrived freely reduced
    bool wada_available = false;   // deficiency one
    std::vector<std::string> notes;
};

inline PresentationReport validate_presentation(const GroupPresentation& p) {
    if (p.generator_count() == 0) throw Error(ErrorKind::domain, "presentation needs at least one generator");
    PresentationReport r;
    r.generator_count = p.generator_count();
    r.relator_count = p.relators().size();
    r.deficiency = p.deficiency();
    r.wada_available = r.deficiency == 1;
    const auto& red = p.relators_reduced_on_input();
    for (std::size_t k = 0; k < red.size(); ++k) {
        if (!red[k]) {
            r.relators_reduced = false;
            r.notes.push_back("relator " + std::to_string(k) + " was not freely reduced; stored as " + p.format_word(p.relators()[k]));
        }
    }
    if (!r.wada_available) r.notes.push_back("deficiency " + std::to_string(r.deficiency) + " != 1: Wada pipeline unavailable");
    return r;
}

}  // namespace torsionlab
