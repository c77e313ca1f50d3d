#pragma once

// Convenience include for the whole library.

#include "ofa/ast.hpp"
#include "ofa/automaton.hpp"
#include "ofa/bench.hpp"
#include "ofa/budget.hpp"
#include "ofa/charset.hpp"
#include "ofa/classes.hpp"
#include "ofa/dfa.hpp"
#include "ofa/match.hpp"
#include "ofa/nfa.hpp"
#include "ofa/parse.hpp"
#include "ofa/pipeline.hpp"
#include "ofa/serialize.hpp"
#include "ofa/trie.hpp"
#include "ofa/utf8.hpp"
