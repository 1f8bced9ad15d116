fn main() {
    println!("gcn");
}
