#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace repostlab::textfeat {

// Built-in word lists. All lookups expect lowercased tokens.

// Easy-word list for the Dale-Chall unfamiliarity count.
const std::set<std::string>& dale_chall_words();

// Stop words removed before topic modeling.
const std::set<std::string>& stop_words();

// Token valences for the sentiment rule scorer.
const std::map<std::string, double>& valence_lexicon();

// Negation markers that flip valence within a 3-token lookbehind.
const std::set<std::string>& negation_words();

// Spell-check dictionary for the word-level grammar score: the union of all
// built-in lists plus a block of frequent function words.
const std::set<std::string>& spelling_words();

}  // namespace repostlab::textfeat
