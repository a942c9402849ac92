#pragma once

#include "koszul/bigraded.hpp"
#include "koszul/bimod.hpp"
#include "koszul/coxeter.hpp"
#include "koszul/decompose.hpp"
#include "koszul/duality.hpp"
#include "koszul/hecke.hpp"
#include "koszul/io.hpp"
#include "koszul/kl_cache.hpp"
#include "koszul/laurent.hpp"
#include "koszul/linalg.hpp"
#include "koszul/parabolic.hpp"
#include "koszul/polyring.hpp"
#include "koszul/rational.hpp"
