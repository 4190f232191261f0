#include <cctype>
#include <string>
#include <vector>

#include "bushdx/error.hpp"
#include "bushdx/rules.hpp"

namespace bushdx {

namespace {

struct Token {
  std::string text;   // as written
  std::string lower;  // for keyword and name matching
  std::size_t column;
};

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c == '#') break;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (!is_word_char(c)) {
      throw ParseError(std::string("unexpected character '") + line[i] + "'", line_no, i + 1);
    }
    const std::size_t start = i;
    while (i < line.size() && is_word_char(static_cast<unsigned char>(line[i]))) ++i;
    Token t{std::string(line.substr(start, i - start)), {}, start + 1};
    t.lower = t.text;
    for (auto& ch : t.lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    tokens.push_back(std::move(t));
  }
  return tokens;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no, std::size_t line_length)
      : tokens_(std::move(tokens)), line_(line_no), end_column_(line_length + 1) {}

  Rule parse() {
    expect_keyword("if");
    Rule rule;
    std::array<bool, kGasCount> used{};
    while (true) {
      const Token& gas_tok = next("gas name");
      const auto gas = parse_gas(gas_tok.lower);
      if (!gas) fail("unknown gas '" + gas_tok.text + "'", gas_tok);
      if (used[index(*gas)]) fail("gas '" + gas_tok.text + "' repeated in one rule", gas_tok);
      used[index(*gas)] = true;
      expect_keyword("is");

      const Token& value_tok = next("level, NOT or ANY");
      if (value_tok.lower == "any") {
        rule.antecedent.push_back(Atom::is_any(*gas));
      } else {
        bool negated = false;
        const Token* level_tok = &value_tok;
        if (value_tok.lower == "not") {
          negated = true;
          level_tok = &next("level");
        }
        const auto level = parse_level(level_tok->lower);
        if (!level) fail("unknown level '" + level_tok->text + "'", *level_tok);
        rule.antecedent.push_back({*gas, *level, negated, false});
      }

      const Token& joiner = next("AND or THEN");
      if (joiner.lower == "and") continue;
      if (joiner.lower == "then") break;
      fail("expected AND or THEN, found '" + joiner.text + "'", joiner);
    }
    expect_keyword("risk");
    expect_keyword("is");
    const Token& group_tok = next("risk group");
    const auto group = parse_group(group_tok.lower);
    if (!group) fail("unknown risk group '" + group_tok.text + "'", group_tok);
    rule.consequent = *group;
    if (pos_ < tokens_.size()) fail("unexpected '" + tokens_[pos_].text + "' after rule", tokens_[pos_]);
    return rule;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, line_, at.column);
  }

  const Token& next(std::string_view expected) {
    if (pos_ >= tokens_.size()) {
      throw ParseError("expected " + std::string(expected) + " before end of line", line_,
                       end_column_);
    }
    return tokens_[pos_++];
  }

  void expect_keyword(std::string_view kw) {
    std::string upper(kw);
    for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    const Token& t = next(upper);
    if (t.lower != kw) fail("expected " + upper + ", found '" + t.text + "'", t);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t end_column_;
};

}  // namespace

RuleSet parse_rules(std::string_view text, std::string name) {
  RuleSet set;
  set.name = std::move(name);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = tokenize_line(line, line_no);
    if (!tokens.empty()) set.rules.push_back(LineParser(std::move(tokens), line_no, line.size()).parse());
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return set;
}

}  // namespace bushdx
