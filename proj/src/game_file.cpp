#include "mdbench/game_file.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mdbench/errors.hpp"

namespace mdbench {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
  bool quoted = false;
};

[[noreturn]] void fail(int line, int column, const std::string& message) {
  throw ConfigError("game file, line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + message);
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const int column = static_cast<int>(i) + 1;
    if (line[i] == '"') {
      size_t end = line.find('"', i + 1);
      if (end == std::string::npos) fail(line_no, column, "unterminated string");
      tokens.push_back({line.substr(i + 1, end - i - 1), column, true});
      i = end + 1;
      continue;
    }
    if (line[i] == '{' || line[i] == '}' || line[i] == '[' || line[i] == ']') {
      tokens.push_back({std::string(1, line[i]), column, false});
      ++i;
      continue;
    }
    size_t end = i;
    while (end < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[end])) &&
           line[end] != '{' && line[end] != '}' && line[end] != '[' &&
           line[end] != ']' && line[end] != '#' && line[end] != '"')
      ++end;
    tokens.push_back({line.substr(i, end - i), column, false});
    i = end;
  }
  return tokens;
}

struct RawEdge {
  std::string label;   // action label, or probability text for chance
  std::string child;
  int column;
};

struct RawNode {
  int line;
  std::string id;
  enum { Chance, Decision, Terminal } kind;
  int player = -1;          // 0-based
  std::string infostate;
  std::vector<RawEdge> edges;
  std::vector<double> payoffs;
};

class Cursor {
 public:
  Cursor(const std::vector<Token>& tokens, int line) : tokens_(tokens), line_(line) {}

  const Token& expect(const std::string& what) {
    if (pos_ >= tokens_.size())
      fail(line_, last_column(), "expected " + what + " before end of line");
    return tokens_[pos_++];
  }
  const Token& expect_literal(const std::string& text) {
    const Token& t = expect("\"" + text + "\"");
    if (t.text != text || t.quoted)
      fail(line_, t.column, "expected \"" + text + "\", got \"" + t.text + "\"");
    return t;
  }
  bool done() const { return pos_ >= tokens_.size(); }
  bool peek_is(const std::string& text) const {
    return pos_ < tokens_.size() && !tokens_[pos_].quoted && tokens_[pos_].text == text;
  }
  int last_column() const {
    return tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
  }
  void expect_end() {
    if (!done())
      fail(line_, tokens_[pos_].column, "unexpected trailing token \"" + tokens_[pos_].text + "\"");
  }
  int line() const { return line_; }

 private:
  const std::vector<Token>& tokens_;
  int line_;
  size_t pos_ = 0;
};

double parse_number(const Token& t, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    fail(line, t.column, "expected a number, got \"" + t.text + "\"");
  }
}

int parse_int(const Token& t, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    fail(line, t.column, "expected an integer, got \"" + t.text + "\"");
  }
}

}  // namespace

GameTree parse_game_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  bool have_header = false;
  int players = 0;
  std::string root_id;
  int root_line = 0;
  std::vector<RawNode> raw;
  std::map<std::string, int> id_to_index;

  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Token> tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    Cursor cur(tokens, line_no);
    const Token& head = cur.expect("a directive");

    if (head.text == "game") {
      if (have_header) fail(line_no, head.column, "duplicate game header");
      cur.expect("a game name");
      cur.expect_literal("players");
      players = parse_int(cur.expect("a player count"), line_no);
      if (players < 1) fail(line_no, head.column, "players must be >= 1");
      cur.expect_end();
      have_header = true;
      continue;
    }
    if (head.text == "root") {
      if (!root_id.empty()) fail(line_no, head.column, "duplicate root directive");
      root_id = cur.expect("a node id").text;
      root_line = line_no;
      cur.expect_end();
      continue;
    }
    if (head.text != "node")
      fail(line_no, head.column, "unknown directive \"" + head.text + "\"");
    if (!have_header)
      fail(line_no, head.column, "the game header must come before nodes");

    RawNode node;
    node.line = line_no;
    node.id = cur.expect("a node id").text;
    if (id_to_index.count(node.id))
      fail(line_no, head.column, "duplicate node id \"" + node.id + "\"");

    const Token& kind = cur.expect("a node kind");
    if (kind.text == "chance" || kind.text == "player") {
      if (kind.text == "chance") {
        node.kind = RawNode::Chance;
      } else {
        node.kind = RawNode::Decision;
        int p = parse_int(cur.expect("a player number"), line_no);
        if (p < 1 || p > players)
          fail(line_no, kind.column,
               "player " + std::to_string(p) + " is out of range 1.." + std::to_string(players));
        node.player = p - 1;
        cur.expect_literal("infostate");
        const Token& key = cur.expect("an infostate string");
        if (!key.quoted) fail(line_no, key.column, "infostate key must be quoted");
        node.infostate = key.text;
      }
      cur.expect_literal("{");
      while (!cur.peek_is("}")) {
        const Token& label = cur.expect("an outcome");
        cur.expect_literal("->");
        const Token& child = cur.expect("a child id");
        node.edges.push_back({label.text, child.text, label.column});
      }
      cur.expect_literal("}");
      cur.expect_end();
      if (node.edges.empty())
        fail(line_no, kind.column, "node \"" + node.id + "\" has no branches");
    } else if (kind.text == "terminal") {
      node.kind = RawNode::Terminal;
      cur.expect_literal("[");
      while (!cur.peek_is("]")) {
        const Token& v = cur.expect("a payoff");
        node.payoffs.push_back(parse_number(v, line_no));
      }
      cur.expect_literal("]");
      cur.expect_end();
      if (static_cast<int>(node.payoffs.size()) != players)
        fail(line_no, kind.column,
             "terminal \"" + node.id + "\" has " + std::to_string(node.payoffs.size()) +
                 " payoffs, expected " + std::to_string(players));
    } else {
      fail(line_no, kind.column, "unknown node kind \"" + kind.text + "\"");
    }

    id_to_index[node.id] = static_cast<int>(raw.size());
    raw.push_back(std::move(node));
  }

  if (!have_header) throw ConfigError("game file has no game header");
  if (root_id.empty()) throw ConfigError("game file has no root directive");
  if (!id_to_index.count(root_id))
    fail(root_line, 1, "root references unknown node \"" + root_id + "\"");

  std::vector<Node> nodes;
  nodes.reserve(raw.size());
  for (const RawNode& rn : raw) {
    switch (rn.kind) {
      case RawNode::Chance: {
        std::vector<ChanceOutcome> outcomes;
        double sum = 0.0;
        for (const RawEdge& e : rn.edges) {
          auto it = id_to_index.find(e.child);
          if (it == id_to_index.end())
            fail(rn.line, e.column,
                 "node \"" + rn.id + "\" references unknown child \"" + e.child + "\"");
          Token prob_token{e.label, e.column, false};
          double p = parse_number(prob_token, rn.line);
          if (p < 0.0)
            fail(rn.line, e.column, "negative probability in node \"" + rn.id + "\"");
          sum += p;
          outcomes.push_back({p, it->second});
        }
        if (std::abs(sum - 1.0) > 1e-9)
          fail(rn.line, 1,
               "chance node \"" + rn.id + "\" probabilities sum to " + std::to_string(sum));
        for (auto& o : outcomes) o.prob /= sum;
        nodes.push_back(Node::chance(std::move(outcomes)));
        break;
      }
      case RawNode::Decision: {
        std::vector<ActionEdge> actions;
        for (const RawEdge& e : rn.edges) {
          auto it = id_to_index.find(e.child);
          if (it == id_to_index.end())
            fail(rn.line, e.column,
                 "node \"" + rn.id + "\" references unknown child \"" + e.child + "\"");
          actions.push_back({e.label, it->second});
        }
        nodes.push_back(Node::decision(rn.player, rn.infostate, std::move(actions)));
        break;
      }
      case RawNode::Terminal: {
        Eigen::VectorXd payoffs(static_cast<Eigen::Index>(rn.payoffs.size()));
        for (size_t i = 0; i < rn.payoffs.size(); ++i)
          payoffs[static_cast<Eigen::Index>(i)] = rn.payoffs[i];
        nodes.push_back(Node::terminal(std::move(payoffs)));
        break;
      }
    }
  }

  // Tree-shape, perfect-recall, and reachability validation happens in the
  // GameTree constructor; wrap its errors with file context.
  try {
    return GameTree(players, std::move(nodes), id_to_index[root_id]);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("game file: ") + e.what());
  }
}

GameTree load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open game file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game_file(buffer.str());
}

}  // namespace mdbench
