namespace obstrukt {
}
