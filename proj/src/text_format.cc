// Copyright 2026 The Progressive Hiding Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phide/text_format.h"

#include <charconv>
#include <sstream>

#include "phide/errors.h"

namespace phide {
namespace {

std::string Number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void CheckName(const std::string& name) {
  if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos) {
    throw InvalidArgument("name '" + name + "' is empty or has whitespace");
  }
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : stream_(text) {}

  // Next non-empty line split into tokens; false at end of input.
  bool Next() {
    std::string line;
    while (std::getline(stream_, line)) {
      ++number_;
      current_ = line;
      tokens_.clear();
      std::istringstream words(line);
      std::string word;
      while (words >> word) tokens_.push_back(word);
      if (!tokens_.empty()) return true;
    }
    return false;
  }

  const std::vector<std::string>& tokens() const { return tokens_; }

  [[noreturn]] void Fail(const std::string& what) const {
    throw InvalidArgument("line " + std::to_string(number_) + " ('" +
                          current_ + "'): " + what);
  }

  void Expect(const std::string& keyword, size_t min_tokens) const {
    if (tokens_.empty() || tokens_[0] != keyword) Fail("expected " + keyword);
    if (tokens_.size() < min_tokens) Fail("missing fields");
  }

  long long Integer(size_t k) const {
    long long value = 0;
    const std::string& s = tokens_.at(k);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail("'" + s + "' is not an integer");
    }
    return value;
  }

  double Real(size_t k) const {
    double value = 0.;
    const std::string& s = tokens_.at(k);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail("'" + s + "' is not a number");
    }
    return value;
  }

 private:
  std::istringstream stream_;
  std::vector<std::string> tokens_;
  std::string current_;
  int number_ = 0;
};

}  // namespace

std::string SerializeGame(const GameWithMaps& bundle) {
  const ProductGame& game = bundle.game;
  CheckName(game.name());
  std::ostringstream out;
  out << "game " << game.name() << "\n";
  out << "players " << game.NumPlayers() << "\n";
  for (int i = 0; i < game.NumStages(); ++i) {
    out << "stage " << i << " player " << game.PlayerOfStage(i) << " actions "
        << game.NumActions(i) << "\n";
  }
  for (const NatureState& s : game.nature()) {
    out << "state " << Number(s.weight) << " " << s.components.size();
    for (int c : s.components) out << " " << c;
    out << "\n";
  }
  for (int h = 0; h < game.NumHistories(); ++h) {
    out << "reward " << h;
    for (int p = 0; p < game.NumPlayers(); ++p) {
      out << " " << Number(game.Reward(h, p));
    }
    out << "\n";
  }
  for (const InformationMap& map : bundle.maps) {
    CheckName(map.name());
    out << "map " << map.name() << "\n";
    for (int i = 0; i < map.NumStages(); ++i) {
      const StageLabeling& stage = map.stage(i);
      if (!stage.table.empty()) {
        out << "table " << i << " " << stage.table.size();
        for (Label l : stage.table) out << " " << l;
      } else {
        out << "reveals " << i << " " << stage.reveals.size();
        for (const Component& c : stage.reveals) {
          out << " " << (c.kind == Component::Kind::kNature ? 'n' : 'a')
              << c.index;
        }
      }
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

GameWithMaps ParseGame(const std::string& text) {
  LineReader reader(text);
  if (!reader.Next()) throw InvalidArgument("empty game text");
  reader.Expect("game", 2);
  const std::string name = reader.tokens()[1];
  if (!reader.Next()) reader.Fail("unexpected end of input");
  reader.Expect("players", 2);
  const int num_players = static_cast<int>(reader.Integer(1));

  std::vector<int> players;
  std::vector<int> actions;
  std::vector<NatureState> nature;
  std::vector<double> rewards;
  std::vector<InformationMap> maps;
  std::string map_name;
  std::vector<StageLabeling> map_stages;
  bool in_map = false;
  bool ended = false;
  auto flush_map = [&]() {
    if (in_map) maps.emplace_back(map_name, std::move(map_stages));
    map_stages.clear();
  };

  while (reader.Next()) {
    const std::string& keyword = reader.tokens()[0];
    if (keyword == "end") {
      ended = true;
      break;
    }
    if (keyword == "stage") {
      reader.Expect("stage", 6);
      if (reader.Integer(1) != static_cast<long long>(players.size())) {
        reader.Fail("stages must be listed in order");
      }
      players.push_back(static_cast<int>(reader.Integer(3)));
      actions.push_back(static_cast<int>(reader.Integer(5)));
    } else if (keyword == "state") {
      reader.Expect("state", 3);
      NatureState s;
      s.weight = reader.Real(1);
      const long long k = reader.Integer(2);
      if (k < 0 || reader.tokens().size() != static_cast<size_t>(3 + k)) {
        reader.Fail("component count mismatch");
      }
      for (long long c = 0; c < k; ++c) {
        s.components.push_back(static_cast<int>(reader.Integer(3 + c)));
      }
      nature.push_back(std::move(s));
    } else if (keyword == "reward") {
      reader.Expect("reward", 2 + num_players);
      if (reader.tokens().size() != static_cast<size_t>(2 + num_players)) {
        reader.Fail("expected one reward per player");
      }
      if (reader.Integer(1) !=
          static_cast<long long>(rewards.size() / num_players)) {
        reader.Fail("rewards must be listed in history order");
      }
      for (int p = 0; p < num_players; ++p) rewards.push_back(reader.Real(2 + p));
    } else if (keyword == "map") {
      reader.Expect("map", 2);
      flush_map();
      in_map = true;
      map_name = reader.tokens()[1];
    } else if (keyword == "reveals" || keyword == "table") {
      if (!in_map) reader.Fail("stage labeling outside a map");
      reader.Expect(keyword, 3);
      if (reader.Integer(1) != static_cast<long long>(map_stages.size())) {
        reader.Fail("map stages must be listed in order");
      }
      const long long k = reader.Integer(2);
      if (k < 0 || reader.tokens().size() != static_cast<size_t>(3 + k)) {
        reader.Fail("entry count mismatch");
      }
      StageLabeling stage;
      for (long long e = 0; e < k; ++e) {
        if (keyword == "table") {
          stage.table.push_back(reader.Integer(3 + e));
          continue;
        }
        const std::string& token = reader.tokens()[3 + e];
        if (token.size() < 2 || (token[0] != 'n' && token[0] != 'a')) {
          reader.Fail("component '" + token + "' must be n<k> or a<stage>");
        }
        int index = 0;
        auto [ptr, ec] =
            std::from_chars(token.data() + 1, token.data() + token.size(), index);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
          reader.Fail("component '" + token + "' has a bad index");
        }
        stage.reveals.push_back(token[0] == 'n' ? Component::Nature(index)
                                                : Component::Action(index));
      }
      map_stages.push_back(std::move(stage));
    } else {
      reader.Fail("unknown keyword '" + keyword + "'");
    }
  }
  if (!ended) throw InvalidArgument("game text is missing 'end'");
  flush_map();

  GameWithMaps bundle{ProductGame(name, std::move(nature), std::move(players),
                                  std::move(actions), num_players,
                                  std::move(rewards)),
                      std::move(maps)};
  for (const InformationMap& map : bundle.maps) map.Validate(bundle.game);
  return bundle;
}

}  // namespace phide
