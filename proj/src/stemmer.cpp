// Copyright 2026 The SBS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbs/stemmer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sbs/error.hpp"
#include "sbs/unicode.hpp"

namespace sbs {
namespace {

// Porter's algorithm over a buffer b[0..k]. Indices are signed because the
// reference formulation relies on j dropping below zero.
class Porter {
 public:
  explicit Porter(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, k_ + 1);
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool doublec(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, where the last consonant is not
  // w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int length = static_cast<int>(s.size());
    if (length > k_ + 1) return false;
    if (std::string_view(b_).substr(k_ - length + 1, length) != s) return false;
    j_ = k_ - length;
    return true;
  }

  void setto(std::string_view s) {
    const int length = static_cast<int>(s.size());
    b_.replace(j_ + 1, b_.size() - (j_ + 1), s);
    k_ = j_ + length;
  }

  void r(std::string_view s) {
    if (m() > 0) setto(s);
  }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        setto("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      truncate();
      if (ends("at")) {
        setto("ate");
      } else if (ends("bl")) {
        setto("ble");
      } else if (ends("iz")) {
        setto("ize");
      } else if (doublec(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (m() == 1 && cvc(k_)) {
          j_ = k_;
          setto_after_end("e");
        }
      }
    }
    truncate();
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("ational")) { r("ate"); break; }
        if (ends("tional")) { r("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { r("ence"); break; }
        if (ends("anci")) { r("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { r("ize"); break; }
        break;
      case 'l':
        if (ends("bli")) { r("ble"); break; }
        if (ends("alli")) { r("al"); break; }
        if (ends("entli")) { r("ent"); break; }
        if (ends("eli")) { r("e"); break; }
        if (ends("ousli")) { r("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { r("ize"); break; }
        if (ends("ation")) { r("ate"); break; }
        if (ends("ator")) { r("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { r("al"); break; }
        if (ends("iveness")) { r("ive"); break; }
        if (ends("fulness")) { r("ful"); break; }
        if (ends("ousness")) { r("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { r("al"); break; }
        if (ends("iviti")) { r("ive"); break; }
        if (ends("biliti")) { r("ble"); break; }
        break;
      case 'g':
        if (ends("logi")) { r("log"); break; }
        break;
      default:
        break;
    }
    truncate();
  }

  void step3() {
    switch (b_[k_]) {
      case 'e':
        if (ends("icate")) { r("ic"); break; }
        if (ends("ative")) { r(""); break; }
        if (ends("alize")) { r("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { r("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { r("ic"); break; }
        if (ends("ful")) { r(""); break; }
        break;
      case 's':
        if (ends("ness")) { r(""); break; }
        break;
      default:
        break;
    }
    truncate();
  }

  void step4() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("al")) break;
        return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e':
        if (ends("er")) break;
        return;
      case 'i':
        if (ends("ic")) break;
        return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
        if (ends("ou")) break;
        return;
      case 's':
        if (ends("ism")) break;
        return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u':
        if (ends("ous")) break;
        return;
      case 'v':
        if (ends("ive")) break;
        return;
      case 'z':
        if (ends("ize")) break;
        return;
      default:
        return;
    }
    if (m() > 1) {
      k_ = j_;
      truncate();
    }
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && doublec(k_) && m() > 1) --k_;
    truncate();
  }

  void truncate() { b_.resize(k_ + 1); }

  void setto_after_end(std::string_view s) {
    b_.resize(k_ + 1);
    b_ += s;
    k_ += static_cast<int>(s.size());
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

bool is_plain_lower_ascii(std::string_view word) {
  return std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

constexpr std::string_view kItalianLightRules = R"(# Light Italian suffix stripper: derivational endings first, then
# inflectional vowels.
name italian-light
min_stem 3
azioni -
azione -
amento -
amenti -
imento -
imenti -
atrice -
atrici -
mente -
abile -
abili -
ibile -
ibili -
ista -
iste -
isti -
ismo -
ismi -
anza -
anze -
enza -
enze -
ità -
a -
e -
i -
o -
)";

}  // namespace

Language parse_language(std::string_view name) {
  if (name == "english" || name == "en") return Language::kEnglish;
  if (name == "italian" || name == "it") return Language::kItalian;
  throw InputError("unsupported stemming language `" + std::string(name) + "`");
}

std::string_view language_name(Language language) {
  switch (language) {
    case Language::kEnglish:
      return "english";
    case Language::kItalian:
      return "italian";
  }
  return "unknown";
}

std::string porter_stem_once(std::string_view word) {
  if (word.size() < 3 || !is_plain_lower_ascii(word)) return std::string(word);
  return Porter(word).run();
}

SuffixRuleSet SuffixRuleSet::parse(std::istream& in) {
  SuffixRuleSet set;
  std::size_t default_min = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    const auto where = [&] { return " on line " + std::to_string(line_no); };
    if (first == "name") {
      if (!(fields >> set.name_)) throw InputError("rule file: missing name" + where());
      continue;
    }
    if (first == "min_stem") {
      if (!(fields >> default_min)) throw InputError("rule file: bad min_stem" + where());
      continue;
    }
    SuffixRule rule;
    rule.suffix = unicode::to_lower(first);
    std::string replacement;
    if (!(fields >> replacement)) throw InputError("rule file: missing replacement" + where());
    rule.replacement = replacement == "-" ? "" : unicode::to_lower(replacement);
    rule.min_stem = default_min;
    std::size_t min_stem = 0;
    if (fields >> min_stem) rule.min_stem = min_stem;
    if (rule.replacement.size() >= rule.suffix.size()) {
      // Non-shrinking rewrites could keep a word changing forever.
      throw InputError("rule file: replacement must be shorter than suffix" + where());
    }
    set.rules_.push_back(std::move(rule));
  }
  std::stable_sort(set.rules_.begin(), set.rules_.end(),
                   [](const SuffixRule& a, const SuffixRule& b) {
                     return a.suffix.size() > b.suffix.size();
                   });
  return set;
}

SuffixRuleSet SuffixRuleSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stemmer rules file " + path.string());
  return parse(in);
}

SuffixRuleSet SuffixRuleSet::italian_light() {
  std::istringstream in{std::string(kItalianLightRules)};
  return parse(in);
}

std::string SuffixRuleSet::apply_once(std::string_view word) const {
  for (const auto& rule : rules_) {
    if (rule.suffix.size() > word.size() || !word.ends_with(rule.suffix)) continue;
    const std::string_view stem = word.substr(0, word.size() - rule.suffix.size());
    if (code_points(stem) < rule.min_stem) continue;
    std::string out(stem);
    out += rule.replacement;
    return out;
  }
  return std::string(word);
}

Stemmer Stemmer::none() { return Stemmer(); }

Stemmer Stemmer::for_language(Language language) {
  if (language == Language::kItalian) return from_rules(SuffixRuleSet::italian_light());
  Stemmer s;
  s.kind_ = Kind::kPorter;
  return s;
}

Stemmer Stemmer::from_rules(SuffixRuleSet rules) {
  Stemmer s;
  s.kind_ = Kind::kRules;
  s.rules_ = std::make_shared<const SuffixRuleSet>(std::move(rules));
  return s;
}

std::string Stemmer::stem(std::string_view token) const {
  std::string current(token);
  if (kind_ == Kind::kNone) return current;
  // Every rewrite either shortens the word or turns a final 'y' into 'i' or a
  // final "-ci"/"-li" into "-ce"/"-le", so the loop terminates.
  while (true) {
    std::string next =
        kind_ == Kind::kPorter ? porter_stem_once(current) : rules_->apply_once(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::string Stemmer::describe() const {
  switch (kind_) {
    case Kind::kNone:
      return "none";
    case Kind::kPorter:
      return "english";
    case Kind::kRules:
      return "rules:" + rules_->name();
  }
  return "none";
}

std::string stem(std::string_view token, Language language) {
  return Stemmer::for_language(language).stem(token);
}

}  // namespace sbs
