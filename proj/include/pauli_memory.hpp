#pragma once

#include "pauli_memory/capacity.hpp"
#include "pauli_memory/channel.hpp"
#include "pauli_memory/eigen_hermitian4.hpp"
#include "pauli_memory/error.hpp"
#include "pauli_memory/grid.hpp"
#include "pauli_memory/matrix.hpp"
#include "pauli_memory/nelder_mead.hpp"
#include "pauli_memory/oracle.hpp"
#include "pauli_memory/serialize.hpp"
#include "pauli_memory/states.hpp"
