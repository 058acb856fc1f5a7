#pragma once

#include "zsa/analysis.hpp"
#include "zsa/content.hpp"
#include "zsa/dynamics.hpp"
#include "zsa/equilibrium.hpp"
#include "zsa/errors.hpp"
#include "zsa/game.hpp"
#include "zsa/game_io.hpp"
#include "zsa/preference_graph.hpp"
#include "zsa/random_games.hpp"
#include "zsa/rational.hpp"
#include "zsa/symmetrisation.hpp"
#include "zsa/trajectory_io.hpp"
#include "zsa/verify.hpp"
