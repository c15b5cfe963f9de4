#include "boss/simulation.hpp"
int main(){ return 0; }
