#include "mdbench/games.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "mdbench/errors.hpp"

namespace mdbench {

GameSpec GameSpec::parse(const std::string& text) {
  GameSpec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw ConfigError("empty game name");
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("game parameter \"" + item + "\" is not key=value");
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

std::string GameSpec::to_string() const {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep;
    out += k + "=" + v;
    sep = ',';
  }
  return out;
}

int GameSpec::get_int(const std::string& key, int fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    size_t pos = 0;
    int value = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("game parameter " + key + "=\"" + it->second +
                      "\" is not an integer");
  }
}

std::string GameSpec::get_string(const std::string& key,
                                 const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

// Incremental arena for tree construction.
struct TreeBuilder {
  std::vector<Node> nodes;

  int add(Node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size() - 1);
  }
};

// ---------------------------------------------------------------------------
// Kuhn poker, 2 or 3 players. players+1 cards, ante 1, single bet of 1.
// One betting phase: players in order check or bet; once someone bets, the
// remaining players in cyclic order call or fold.
// ---------------------------------------------------------------------------

constexpr const char* kKuhnRanks = "JQKA";

struct KuhnDeal {
  std::vector<int> cards;  // card of each player
};

struct KuhnBetting {
  // History letters: 'c' check/call, 'b' bet, 'f' fold.
  static int bet_position(const std::string& h) {
    auto pos = h.find('b');
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
  }

  static bool is_terminal(const std::string& h, int players) {
    int b = bet_position(h);
    if (b < 0) return static_cast<int>(h.size()) == players;
    return static_cast<int>(h.size()) == b + players;  // all others responded
  }

  static int actor(const std::string& h, int players) {
    int b = bet_position(h);
    if (b < 0) return static_cast<int>(h.size());
    int responded = static_cast<int>(h.size()) - b - 1;
    return (b + 1 + responded) % players;
  }

  static Eigen::VectorXd payoffs(const std::string& h, const KuhnDeal& deal,
                                 int players) {
    std::vector<double> contribution(players, 1.0);  // antes
    std::vector<bool> active(players, true);
    int b = bet_position(h);
    if (b >= 0) {
      contribution[b] += 1.0;
      for (int r = 0; r < players - 1; ++r) {
        int p = (b + 1 + r) % players;
        if (h[b + 1 + r] == 'c') {
          contribution[p] += 1.0;
        } else {
          active[p] = false;
        }
      }
    }
    double pot = std::accumulate(contribution.begin(), contribution.end(), 0.0);
    int winner = -1;
    for (int p = 0; p < players; ++p)
      if (active[p] && (winner < 0 || deal.cards[p] > deal.cards[winner]))
        winner = p;
    Eigen::VectorXd payoff(players);
    for (int p = 0; p < players; ++p)
      payoff[p] = (p == winner ? pot : 0.0) - contribution[p];
    return payoff;
  }
};

int build_kuhn_betting(TreeBuilder& tb, const KuhnDeal& deal, int players,
                       const std::string& history) {
  if (KuhnBetting::is_terminal(history, players))
    return tb.add(Node::terminal(KuhnBetting::payoffs(history, deal, players)));
  int actor = KuhnBetting::actor(history, players);
  bool facing_bet = KuhnBetting::bet_position(history) >= 0;
  std::vector<ActionEdge> actions;
  if (facing_bet) {
    actions.push_back({"fold", build_kuhn_betting(tb, deal, players, history + 'f')});
    actions.push_back({"call", build_kuhn_betting(tb, deal, players, history + 'c')});
  } else {
    actions.push_back({"check", build_kuhn_betting(tb, deal, players, history + 'c')});
    actions.push_back({"bet", build_kuhn_betting(tb, deal, players, history + 'b')});
  }
  std::string key = std::string(1, kKuhnRanks[deal.cards[actor]]) + "|" + history;
  return tb.add(Node::decision(actor, std::move(key), std::move(actions)));
}

}  // namespace

GameTree make_kuhn(int players) {
  if (players != 2 && players != 3)
    throw ConfigError("kuhn_poker supports players=2 or players=3");
  const int num_cards = players + 1;
  TreeBuilder tb;
  std::vector<ChanceOutcome> deals;
  std::vector<int> cards(num_cards);
  std::iota(cards.begin(), cards.end(), 0);
  std::vector<int> perm;
  std::function<void()> recurse = [&]() {
    if (static_cast<int>(perm.size()) == players) {
      KuhnDeal deal{perm};
      deals.push_back({0.0, build_kuhn_betting(tb, deal, players, "")});
      return;
    }
    for (int c : cards) {
      if (std::find(perm.begin(), perm.end(), c) != perm.end()) continue;
      perm.push_back(c);
      recurse();
      perm.pop_back();
    }
  };
  recurse();
  for (auto& d : deals) d.prob = 1.0 / static_cast<double>(deals.size());
  int root = tb.add(Node::chance(std::move(deals)));
  return GameTree(players, std::move(tb.nodes), root);
}

// ---------------------------------------------------------------------------
// Leduc poker. 6 cards (3 ranks x 2 suits), 2 betting rounds with raise sizes
// 2 and 4, at most 2 raises per round, one public card between rounds.
// ---------------------------------------------------------------------------

namespace {

std::string leduc_card(int c) {
  std::string s;
  s += "JQK"[c / 2];
  s += "ab"[c % 2];
  return s;
}

struct LeducRound {
  // Histories over 'c' (check/call), 'r' (raise), 'f' (fold).
  static bool is_terminal_fold(const std::string& h) {
    return !h.empty() && h.back() == 'f';
  }
  static bool is_complete(const std::string& h) {
    if (h == "cc") return true;
    return h.size() >= 2 && h.back() == 'c' && h[h.size() - 2] == 'r';
  }
  static int actor(const std::string& h) { return static_cast<int>(h.size()) % 2; }
  static int raises(const std::string& h) {
    return static_cast<int>(std::count(h.begin(), h.end(), 'r'));
  }
  static bool facing_raise(const std::string& h) {
    return !h.empty() && h.back() == 'r';
  }
};

struct LeducState {
  int cards[2];
  int public_card = -1;
  double bets[2] = {1.0, 1.0};  // antes
};

int build_leduc_round(TreeBuilder& tb, LeducState state, int round,
                      const std::string& r1_history, const std::string& history);

int leduc_showdown_or_next(TreeBuilder& tb, const LeducState& state, int round,
                           const std::string& r1_history) {
  if (round == 0) {
    // Reveal the public card from the four undealt cards.
    std::vector<ChanceOutcome> outcomes;
    for (int c = 0; c < 6; ++c) {
      if (c == state.cards[0] || c == state.cards[1]) continue;
      LeducState next = state;
      next.public_card = c;
      outcomes.push_back({0.25, build_leduc_round(tb, next, 1, r1_history, "")});
    }
    return tb.add(Node::chance(std::move(outcomes)));
  }
  // Showdown: pairing the public card wins, then high rank, ties split.
  auto rank = [](int c) { return c / 2; };
  const int pub_rank = rank(state.public_card);
  const bool pair0 = rank(state.cards[0]) == pub_rank;
  const bool pair1 = rank(state.cards[1]) == pub_rank;
  int winner = -1;
  if (pair0 != pair1) {
    winner = pair0 ? 0 : 1;
  } else if (rank(state.cards[0]) != rank(state.cards[1])) {
    winner = rank(state.cards[0]) > rank(state.cards[1]) ? 0 : 1;
  }
  Eigen::VectorXd payoff(2);
  if (winner < 0) {
    payoff << 0.0, 0.0;
  } else {
    const int loser = 1 - winner;
    payoff[winner] = state.bets[loser];
    payoff[loser] = -state.bets[loser];
  }
  return tb.add(Node::terminal(std::move(payoff)));
}

int build_leduc_round(TreeBuilder& tb, LeducState state, int round,
                      const std::string& r1_history, const std::string& history) {
  if (LeducRound::is_terminal_fold(history)) {
    const int folder = LeducRound::actor(history.substr(0, history.size() - 1));
    const int winner = 1 - folder;
    Eigen::VectorXd payoff(2);
    payoff[winner] = state.bets[folder];
    payoff[folder] = -state.bets[folder];
    return tb.add(Node::terminal(std::move(payoff)));
  }
  if (LeducRound::is_complete(history))
    return leduc_showdown_or_next(tb, state, round,
                                  round == 0 ? history : r1_history);

  const int actor = LeducRound::actor(history);
  const double raise_size = round == 0 ? 2.0 : 4.0;
  std::vector<ActionEdge> actions;
  if (LeducRound::facing_raise(history)) {
    actions.push_back(
        {"fold", build_leduc_round(tb, state, round, r1_history, history + 'f')});
  }
  {
    LeducState next = state;
    next.bets[actor] = next.bets[1 - actor];
    actions.push_back(
        {"call", build_leduc_round(tb, next, round, r1_history, history + 'c')});
  }
  if (LeducRound::raises(history) < 2) {
    LeducState next = state;
    next.bets[actor] = next.bets[1 - actor] + raise_size;
    actions.push_back(
        {"raise", build_leduc_round(tb, next, round, r1_history, history + 'r')});
  }

  std::string key = leduc_card(state.cards[actor]) + "|";
  if (round == 0) {
    key += history;
  } else {
    key += r1_history + "|" + leduc_card(state.public_card) + "|" + history;
  }
  return tb.add(Node::decision(actor, std::move(key), std::move(actions)));
}

}  // namespace

GameTree make_leduc() {
  TreeBuilder tb;
  std::vector<ChanceOutcome> deals;
  for (int c0 = 0; c0 < 6; ++c0) {
    for (int c1 = 0; c1 < 6; ++c1) {
      if (c0 == c1) continue;
      LeducState state;
      state.cards[0] = c0;
      state.cards[1] = c1;
      deals.push_back({1.0 / 30.0, build_leduc_round(tb, state, 0, "", "")});
    }
  }
  int root = tb.add(Node::chance(std::move(deals)));
  return GameTree(2, std::move(tb.nodes), root);
}

// ---------------------------------------------------------------------------
// Goofspiel, sequentialized simultaneous bidding with hidden bids. Prizes are
// revealed in a fixed order; each round every player secretly plays one card,
// the highest unique... highest bid takes the prize, ties discard it. Players
// observe only the per-round result (winner or draw). The final round is
// forced and resolved without decision nodes. Returns are point differences,
// which makes the game zero-sum.
// ---------------------------------------------------------------------------

namespace {

struct GoofspielCtx {
  int players;
  int num_cards;
  std::vector<int> prizes;  // prize value per round
};

struct GoofspielPath {
  std::vector<std::vector<int>> played;  // per player, cards in play order
  std::vector<unsigned> hands;           // per player, bitmask of cards left
  std::string results;                   // one char per finished round
  std::vector<double> scores;
};

void resolve_round(const GoofspielCtx& ctx, GoofspielPath& path,
                   const std::vector<int>& bids, int round) {
  int best = -1;
  int count = 0;
  for (int bid : bids) {
    if (bid > best) {
      best = bid;
      count = 1;
    } else if (bid == best) {
      ++count;
    }
  }
  if (count == 1) {
    int winner = static_cast<int>(
        std::find(bids.begin(), bids.end(), best) - bids.begin());
    path.scores[winner] += ctx.prizes[round];
    path.results += static_cast<char>('0' + winner);
  } else {
    path.results += 'd';
  }
}

Eigen::VectorXd goofspiel_returns(const GoofspielCtx& ctx,
                                  const std::vector<double>& scores) {
  const int n = ctx.players;
  Eigen::VectorXd payoff(n);
  double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  for (int p = 0; p < n; ++p)
    payoff[p] = scores[p] - (total - scores[p]) / (n - 1);
  return payoff;
}

std::string goofspiel_key(const GoofspielPath& path, int player) {
  std::string key;
  for (size_t i = 0; i < path.played[player].size(); ++i) {
    if (i) key += ',';
    key += std::to_string(path.played[player][i] + 1);
  }
  key += '|';
  key += path.results;
  return key;
}

int build_goofspiel(TreeBuilder& tb, const GoofspielCtx& ctx, GoofspielPath path,
                    int round, std::vector<int> bids) {
  const int n = ctx.players;
  if (static_cast<int>(bids.size()) == n) {
    for (int p = 0; p < n; ++p) {
      path.played[p].push_back(bids[p]);
      path.hands[p] &= ~(1u << bids[p]);
    }
    resolve_round(ctx, path, bids, round);
    return build_goofspiel(tb, ctx, std::move(path), round + 1, {});
  }
  if (round == ctx.num_cards - 1) {
    // Single card left each: play it out without decision nodes.
    std::vector<int> forced(n);
    for (int p = 0; p < n; ++p) {
      for (int c = 0; c < ctx.num_cards; ++c)
        if (path.hands[p] & (1u << c)) forced[p] = c;
    }
    resolve_round(ctx, path, forced, round);
    return tb.add(Node::terminal(goofspiel_returns(ctx, path.scores)));
  }
  const int actor = static_cast<int>(bids.size());
  std::vector<ActionEdge> actions;
  for (int c = 0; c < ctx.num_cards; ++c) {
    if (!(path.hands[actor] & (1u << c))) continue;
    std::vector<int> next_bids = bids;
    next_bids.push_back(c);
    actions.push_back({std::to_string(c + 1),
                       build_goofspiel(tb, ctx, path, round, std::move(next_bids))});
  }
  std::string key = goofspiel_key(path, actor);
  return tb.add(Node::decision(actor, std::move(key), std::move(actions)));
}

}  // namespace

GameTree make_goofspiel(int players, int num_cards, const std::string& point_order) {
  if (players < 2) throw ConfigError("goofspiel needs at least 2 players");
  if (num_cards < 2) throw ConfigError("goofspiel needs at least 2 cards");
  double paths = 1.0;
  for (int c = 2; c <= num_cards; ++c) paths *= c;
  if (std::pow(paths, players) > 5e6)
    throw ConfigError("goofspiel configuration is too large to expand");

  GoofspielCtx ctx;
  ctx.players = players;
  ctx.num_cards = num_cards;
  ctx.prizes.resize(num_cards);
  if (point_order == "descending") {
    for (int r = 0; r < num_cards; ++r) ctx.prizes[r] = num_cards - r;
  } else if (point_order == "ascending") {
    for (int r = 0; r < num_cards; ++r) ctx.prizes[r] = r + 1;
  } else {
    throw ConfigError("goofspiel point_order must be descending or ascending");
  }

  GoofspielPath path;
  path.played.resize(players);
  path.hands.assign(players, (1u << num_cards) - 1u);
  path.scores.assign(players, 0.0);

  TreeBuilder tb;
  int root = build_goofspiel(tb, ctx, std::move(path), 0, {});
  return GameTree(players, std::move(tb.nodes), root);
}

// ---------------------------------------------------------------------------
// Tiny Hanabi: both players privately draw one of num_chance cards, player 1
// acts on their own draw, player 2 sees their own draw plus player 1's action,
// and both receive the same payoff.
// ---------------------------------------------------------------------------

double TinyHanabiPayoff::at(int d1, int d2, int a1, int a2) const {
  const int nc = num_chance, na = num_actions;
  return values[((d1 * nc + d2) * na + a1) * na + a2];
}

void TinyHanabiPayoff::validate() const {
  if (num_chance < 1 || num_actions < 1)
    throw ConfigError("tiny_hanabi needs positive num_chance and num_actions");
  const size_t expected = static_cast<size_t>(num_chance) * num_chance *
                          num_actions * num_actions;
  if (values.size() != expected)
    throw ConfigError("tiny_hanabi payoff needs " + std::to_string(expected) +
                      " entries, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError("tiny_hanabi payoff entry is not finite");
}

namespace {

TinyHanabiPayoff signalling_payoff(int num_actions, bool xor_target) {
  TinyHanabiPayoff p;
  p.num_chance = 2;
  p.num_actions = num_actions;
  p.values.resize(4 * static_cast<size_t>(num_actions) * num_actions);
  for (int d1 = 0; d1 < 2; ++d1)
    for (int d2 = 0; d2 < 2; ++d2)
      for (int a1 = 0; a1 < num_actions; ++a1)
        for (int a2 = 0; a2 < num_actions; ++a2) {
          const int target = xor_target ? (d1 ^ d2) : d1;
          double v = 0.0;
          if (a2 == target) v += 2.0;
          if (a1 == d1) v += 1.0;
          p.values[((d1 * 2 + d2) * num_actions + a1) * num_actions + a2] = v;
        }
  return p;
}

}  // namespace

TinyHanabiPayoff TinyHanabiPayoff::default_a() { return signalling_payoff(3, false); }
TinyHanabiPayoff TinyHanabiPayoff::default_b() { return signalling_payoff(2, false); }
TinyHanabiPayoff TinyHanabiPayoff::default_c() { return signalling_payoff(2, true); }

GameTree make_tiny_hanabi(const TinyHanabiPayoff& payoff) {
  payoff.validate();
  const int nc = payoff.num_chance, na = payoff.num_actions;
  TreeBuilder tb;
  std::vector<ChanceOutcome> draws;
  for (int d1 = 0; d1 < nc; ++d1) {
    for (int d2 = 0; d2 < nc; ++d2) {
      std::vector<ActionEdge> a1_edges;
      for (int a1 = 0; a1 < na; ++a1) {
        std::vector<ActionEdge> a2_edges;
        for (int a2 = 0; a2 < na; ++a2) {
          Eigen::VectorXd v(2);
          v << payoff.at(d1, d2, a1, a2), payoff.at(d1, d2, a1, a2);
          a2_edges.push_back({std::to_string(a2), tb.add(Node::terminal(std::move(v)))});
        }
        std::string key2 =
            "d=" + std::to_string(d2) + "|a1=" + std::to_string(a1);
        a1_edges.push_back(
            {std::to_string(a1), tb.add(Node::decision(1, std::move(key2), std::move(a2_edges)))});
      }
      std::string key1 = "d=" + std::to_string(d1);
      draws.push_back({1.0 / (nc * nc),
                       tb.add(Node::decision(0, std::move(key1), std::move(a1_edges)))});
    }
  }
  int root = tb.add(Node::chance(std::move(draws)));
  return GameTree(2, std::move(tb.nodes), root);
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

JointPolicy::Table uniform_table(const GameTree& tree, PlayerId p) {
  JointPolicy::Table table;
  for (const auto& [key, info] : tree.infostates(p))
    table[key] = Eigen::VectorXd::Constant(info.num_actions, 1.0 / info.num_actions);
  return table;
}

TinyHanabiPayoff payoff_from_spec(const GameSpec& spec, TinyHanabiPayoff fallback) {
  TinyHanabiPayoff p = std::move(fallback);
  p.num_chance = spec.get_int("num_chance", p.num_chance);
  p.num_actions = spec.get_int("num_actions", p.num_actions);
  if (spec.has("payoff")) {
    p.values.clear();
    std::stringstream ss(spec.get_string("payoff", ""));
    std::string item;
    while (std::getline(ss, item, ';')) {
      try {
        p.values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("tiny_hanabi payoff entry \"" + item + "\" is not a number");
      }
    }
  } else if (spec.has("num_chance") || spec.has("num_actions")) {
    throw ConfigError(
        "tiny_hanabi with custom num_chance/num_actions needs an explicit payoff");
  }
  return p;
}

}  // namespace

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {
      "kuhn_poker",          "leduc_poker",
      "goofspiel",           "tiny_hanabi",
      "tiny_hanabi_a",       "tiny_hanabi_b",
      "tiny_hanabi_c",       "single_agent_kuhn_a",
      "single_agent_kuhn_b", "single_agent_goofspiel",
      "mcc_kuhn_a",          "mcc_kuhn_b",
      "mcc_goofspiel"};
  return names;
}

bool is_builtin(const std::string& name) {
  const auto& names = registry_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> builtin_names() { return registry_names(); }

BuiltGame make_builtin(const GameSpec& spec) {
  const std::string& name = spec.name;
  if (name == "kuhn_poker") {
    int players = spec.get_int("players", 2);
    return {make_kuhn(players), std::nullopt,
            std::to_string(players) + "-player Kuhn poker (zero-sum)"};
  }
  if (name == "leduc_poker") {
    int players = spec.get_int("players", 2);
    if (players != 2) throw ConfigError("leduc_poker supports players=2 only");
    return {make_leduc(), std::nullopt, "2-player Leduc poker (zero-sum)"};
  }
  if (name == "goofspiel") {
    int players = spec.get_int("players", 3);
    int cards = spec.get_int("cards", 3);
    std::string order = spec.get_string("point_order", "descending");
    return {make_goofspiel(players, cards, order), std::nullopt,
            std::to_string(players) + "-player goofspiel, " + std::to_string(cards) +
                " cards, " + order + " prizes (zero-sum)"};
  }
  if (name == "tiny_hanabi" || name == "tiny_hanabi_a") {
    TinyHanabiPayoff p = payoff_from_spec(spec, TinyHanabiPayoff::default_a());
    return {make_tiny_hanabi(p), std::nullopt,
            "tiny Hanabi, shared payoff (cooperative)"};
  }
  if (name == "tiny_hanabi_b") {
    TinyHanabiPayoff p = payoff_from_spec(spec, TinyHanabiPayoff::default_b());
    return {make_tiny_hanabi(p), std::nullopt,
            "tiny Hanabi, shared payoff (cooperative)"};
  }
  if (name == "tiny_hanabi_c") {
    TinyHanabiPayoff p = payoff_from_spec(spec, TinyHanabiPayoff::default_c());
    return {make_tiny_hanabi(p), std::nullopt,
            "tiny Hanabi, shared payoff (cooperative)"};
  }
  if (name == "single_agent_kuhn_a" || name == "single_agent_kuhn_b") {
    GameTree base = make_kuhn(2);
    PlayerId background = name.back() == 'a' ? 1 : 0;
    GameTree tree = fix_player_policy(base, background,
                                      uniform_table(base, background), true);
    return {std::move(tree), std::nullopt,
            "2-player Kuhn with a uniform background player (single-agent)"};
  }
  if (name == "single_agent_goofspiel") {
    GameTree base = make_goofspiel(2, 3, "descending");
    GameTree tree = fix_player_policy(base, 1, uniform_table(base, 1), true);
    return {std::move(tree), std::nullopt,
            "2-player goofspiel with a uniform background player (single-agent)"};
  }
  if (name == "mcc_kuhn_a" || name == "mcc_kuhn_b") {
    GameTree base = make_kuhn(3);
    TeamPartition teams =
        name.back() == 'a' ? TeamPartition{{0, 1}, {2}} : TeamPartition{{0, 2}, {1}};
    GameTree tree = apply_team_rewards(base, teams);
    return {std::move(tree), teams,
            "3-player Kuhn with shared team rewards (mixed)"};
  }
  if (name == "mcc_goofspiel") {
    GameTree base = make_goofspiel(3, 3, "descending");
    TeamPartition teams{{0, 1}, {2}};
    GameTree tree = apply_team_rewards(base, teams);
    return {std::move(tree), teams,
            "3-player goofspiel with shared team rewards (mixed)"};
  }
  throw ConfigError("unknown game \"" + name + "\"; see list-games");
}

}  // namespace mdbench
