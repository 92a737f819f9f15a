// Copyright 2026 The fcgen Authors
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


#pragma once

// Reference BLEU written from the definition, for cross-checking
// fcgen::eval. Deliberately naive: every n-gram is materialised as a vector
// key and counts are compared with nested loops.

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::map<std::vector<std::string>, int> ngrams(
    const std::vector<std::string>& w, int n) {
  std::map<std::vector<std::string>, int> m;
  for (int i = 0; i + n <= static_cast<int>(w.size()); ++i) {
    std::vector<std::string> g;
    for (int k = 0; k < n; ++k) g.push_back(w[i + k]);
    m[g] += 1;
  }
  return m;
}

inline double bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::string>& refs) {
  double match[4] = {0, 0, 0, 0};
  double total[4] = {0, 0, 0, 0};
  double c = 0, r = 0;
  for (size_t s = 0; s < hyps.size(); ++s) {
    auto h = words(hyps[s]);
    auto rf = words(refs[s]);
    c += h.size();
    r += rf.size();
    for (int n = 1; n <= 4; ++n) {
      auto hg = ngrams(h, n);
      auto rg = ngrams(rf, n);
      for (const auto& [g, cnt] : hg) {
        total[n - 1] += cnt;
        int in_ref = 0;
        for (const auto& [g2, cnt2] : rg) {
          if (g2 == g) in_ref = cnt2;
        }
        match[n - 1] += cnt < in_ref ? cnt : in_ref;
      }
    }
  }
  double log_sum = 0;
  for (int n = 0; n < 4; ++n) {
    if (total[n] == 0 || match[n] == 0) return 0.0;
    log_sum += std::log(match[n] / total[n]);
  }
  double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / 4.0);
}

}  // namespace oracle
