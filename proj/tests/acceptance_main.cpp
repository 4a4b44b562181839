// placeholder — full acceptance suite lands below
int main() { return 1; }
