#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "morsegraded/resolution.hpp"

namespace mg {

// Words are read from the top of a chain to the bottom. A symbol is a
// single label or, in the degree-d automaton, the ordered labels of one
// skipped block of ranks.
using Symbol = std::vector<int>;
using Word = std::vector<Symbol>;

struct AutomatonState {
  bool final = false;
  std::string description;
};

struct MorseAutomaton {
  std::string kind;
  std::vector<Symbol> alphabet;
  std::vector<AutomatonState> states;
  std::vector<std::map<int, int>> transitions;  // state -> symbol id -> state
  int initial = 0;
  std::vector<std::string> notes;

  int symbol_id(const Symbol& s) const;
  int step(int state, int symbol) const;
  bool accepts(const Word& w) const;
  std::size_t transition_count() const;
};

struct AutomatonOptions {
  std::size_t state_budget = 1000000;
  // Release a pending label by a leading-term label smaller than, and
  // commuting with, the label before it. Off by default: it can accept two
  // members of one commutation class.
  bool below_predecessor_escape = false;
};

// The recency-list automaton for a quadratic basis: states record the
// previously read labels and increasing leading terms in order of most
// recent occurrence.
MorseAutomaton build_quadratic_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                         const AutomatonOptions& options = {});

// Lexicographically least non-stuttering representatives of commutation
// classes, recognized with pending-letter sets.
MorseAutomaton build_lex_normal_form_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                               const AutomatonOptions& options = {});

// Degree-d automaton. Quadratic bases reuse the quadratic construction;
// otherwise transitions between recency states are collected from the
// surviving cells of the given runs.
MorseAutomaton build_degree_d_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                        const std::vector<IntervalRun>& runs, const AutomatonOptions& options = {});

// Symbol word of a surviving cell of an interval complex.
Word cell_word(const MorseComplex& mc, int face);
// Symbol words of all survivors of a run; the zero run gives the empty word.
std::vector<Word> survivor_words(const IntervalRun& run);

std::vector<Word> accepted_words(const MorseAutomaton& a, std::size_t max_length);
std::vector<mpz_class> word_counts(const MorseAutomaton& a, std::size_t max_length);

struct RationalSeries {
  std::vector<mpz_class> numerator;    // coefficients in t, ascending
  std::vector<mpz_class> denominator;  // constant term 1
  std::vector<mpz_class> coefficients(std::size_t count) const;
  std::string str() const;
};

// Transfer-matrix series, with the denominator found as the minimal
// recurrence of the word counts of the minimized automaton.
RationalSeries rational_series(const MorseAutomaton& a);

struct JPrimeClass {
  Monomial content;
  std::vector<int> representative;  // lexicographically least member
  std::size_t size = 0;
  bool non_stuttering = true;
};

bool labels_commute(const GroebnerBasis& gb, int a, int b);

// Commutation classes of words with the given content; stuttering classes
// are dropped unless requested.
std::vector<JPrimeClass> jprime_classes(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const Monomial& content,
                                        bool include_stuttering = false);

std::string word_str(const Word& w);

}  // namespace mg
