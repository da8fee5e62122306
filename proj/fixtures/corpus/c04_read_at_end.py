def rain():
    total = 0.0
    count = 0
    line = input("Rainfall: ")
    while line != "-999":
        try:
            value = float(line)
            if value >= 0:
                total += value
                count += 1
        except ValueError:
            pass
        line = input("Rainfall: ")
    if count == 0:
        return 0
    return total / count

if __name__ == "__main__":
    print(rain())
